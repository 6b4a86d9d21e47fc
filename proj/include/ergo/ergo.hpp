#pragma once

#include "ergo/contrast.hpp"
#include "ergo/deformed.hpp"
#include "ergo/figures.hpp"
#include "ergo/gamble.hpp"
#include "ergo/io.hpp"
#include "ergo/roots.hpp"
#include "ergo/simulate.hpp"
#include "ergo/survey.hpp"
