#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ergo/contrast.hpp"
#include "ergo/gamble.hpp"
#include "ergo/io.hpp"

namespace ergo {

enum class FigureId {
    MeiosisGain,    // fig1: meiosis curves vs the p*x line, gains
    HyperboleLoss,  // fig2: hyperbole curves vs the identity line, losses
    ContrastRatio,  // fig3: contrast ratio in dB with the fuzziness band
    SCurve,         // fig4: composite S-curve with reference lines
};

inline FigureId parse_figure_id(std::string_view name) {
    if (name == "fig1")
        return FigureId::MeiosisGain;
    if (name == "fig2")
        return FigureId::HyperboleLoss;
    if (name == "fig3")
        return FigureId::ContrastRatio;
    if (name == "fig4")
        return FigureId::SCurve;
    throw std::invalid_argument("unknown figure id \"" + std::string(name) +
                                "\" (expected fig1, fig2, fig3 or fig4)");
}

inline const char* figure_id_name(FigureId id) {
    switch (id) {
    case FigureId::MeiosisGain: return "fig1";
    case FigureId::HyperboleLoss: return "fig2";
    case FigureId::ContrastRatio: return "fig3";
    case FigureId::SCurve: return "fig4";
    }
    throw std::invalid_argument("figure_id_name: bad id");
}

// Evenly spaced abscissas with the endpoints hit exactly; the midpoint
// formula keeps landmark values such as x = 0 on the grid.
struct XGrid {
    double min;
    double max;
    std::size_t count;

    double at(std::size_t i) const {
        return min + (static_cast<double>(i) * (max - min)) / static_cast<double>(count - 1);
    }
};

struct CurveParams {
    double p;
    double rho;
};

struct FigureSpec {
    FigureId id;
    XGrid grid;
    std::vector<CurveParams> curves;
    double threshold_db;
};

inline FigureSpec default_figure_spec(FigureId id) {
    switch (id) {
    case FigureId::MeiosisGain:
        return {id, {0.0, 2.0, 201}, {{0.5, 1.0}, {0.1, 1.0}}, kDefaultThresholdDb};
    case FigureId::HyperboleLoss:
        return {id, {-1.0, 0.0, 101}, {{0.5, 1.0}, {0.1, 1.0}}, kDefaultThresholdDb};
    case FigureId::ContrastRatio:
        return {id, {-1.0, 2.0, 301}, {{0.5, 1.0}, {0.05, 1.0}, {0.95, 1.0}}, kDefaultThresholdDb};
    case FigureId::SCurve:
        return {id, {-1.0, 2.0, 301}, {{0.5, kDefaultRho}}, kDefaultThresholdDb};
    }
    throw std::invalid_argument("default_figure_spec: bad id");
}

namespace detail {

inline std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace detail

inline std::string render_figure_csv(const FigureSpec& spec) {
    const XGrid& grid = spec.grid;
    if (grid.count < 2)
        throw std::domain_error("figure grid needs at least 2 samples");
    if (!(grid.min < grid.max))
        throw std::domain_error("figure grid requires xmin < xmax");
    if (spec.curves.empty())
        throw std::domain_error("figure needs at least one p value");
    if (!(spec.threshold_db > 0.0))
        throw std::domain_error("threshold_db must be positive");

    using Column = std::pair<std::string, std::function<double(double)>>;
    std::vector<Column> columns;
    switch (spec.id) {
    case FigureId::MeiosisGain:
        if (!(grid.min >= 0.0))
            throw std::domain_error("fig1 requires x >= 0");
        for (const auto& c : spec.curves) {
            const Probability p(c.p);
            columns.emplace_back("meiosis_p" + detail::short_number(c.p),
                                 [p](double x) { return meiosis_gain(p, x); });
            columns.emplace_back("sure_p" + detail::short_number(c.p),
                                 [p](double x) { return p.value() * x; });
        }
        break;
    case FigureId::HyperboleLoss:
        if (!(grid.min >= -1.0 && grid.max <= 0.0))
            throw std::domain_error("fig2 requires -1 <= x <= 0");
        for (const auto& c : spec.curves) {
            const Probability p(c.p);
            const double rho = c.rho;
            columns.emplace_back("hyperbole_p" + detail::short_number(c.p), [p, rho](double x) {
                return x == 0.0 ? 0.0 : hyperbole_loss(p, x, rho);
            });
        }
        columns.emplace_back("line_x", [](double x) { return x; });
        break;
    case FigureId::ContrastRatio:
        if (!(grid.min >= -1.0))
            throw std::domain_error("fig3 requires x >= -1");
        for (const auto& c : spec.curves) {
            const Probability p(c.p);
            columns.emplace_back("cr_p" + detail::short_number(c.p),
                                 [p](double x) { return contrast_db(p, x); });
        }
        columns.emplace_back("band_lo", [t = spec.threshold_db](double) { return -t; });
        columns.emplace_back("band_hi", [t = spec.threshold_db](double) { return t; });
        break;
    case FigureId::SCurve:
        if (!(grid.min >= -1.0))
            throw std::domain_error("fig4 requires x >= -1");
        for (const auto& c : spec.curves) {
            const Probability p(c.p);
            const double rho = c.rho;
            columns.emplace_back("s_p" + detail::short_number(c.p),
                                 [p, rho](double x) { return s_curve(p, x, rho); });
        }
        columns.emplace_back("line_x", [](double x) { return x; });
        for (const auto& c : spec.curves) {
            const Probability p(c.p);
            columns.emplace_back("sure_p" + detail::short_number(c.p),
                                 [p](double x) { return p.value() * x; });
        }
        break;
    }

    std::string out = "x";
    for (const auto& col : columns) {
        out += ',';
        out += col.first;
    }
    out += '\n';
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double x = grid.at(i);
        out += format_g9(x);
        for (const auto& col : columns) {
            out += ',';
            out += format_g9(col.second(x));
        }
        out += '\n';
    }
    return out;
}

inline void write_figure_csv(const FigureSpec& spec, const std::string& path) {
    write_text_file(path, render_figure_csv(spec));
}

}  // namespace ergo
