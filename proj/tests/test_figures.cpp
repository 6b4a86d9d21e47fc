#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ergo/figures.hpp"

using namespace ergo;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

std::vector<std::string> cells_of(const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ','))
        cells.push_back(cell);
    return cells;
}

}  // namespace

TEST_CASE("figure ids parse and print", "[figures]") {
    REQUIRE(parse_figure_id("fig1") == FigureId::MeiosisGain);
    REQUIRE(parse_figure_id("fig2") == FigureId::HyperboleLoss);
    REQUIRE(parse_figure_id("fig3") == FigureId::ContrastRatio);
    REQUIRE(parse_figure_id("fig4") == FigureId::SCurve);
    for (const char* name : {"fig1", "fig2", "fig3", "fig4"})
        REQUIRE(figure_id_name(parse_figure_id(name)) == std::string(name));
    REQUIRE_THROWS_AS(parse_figure_id("fig9"), std::invalid_argument);
}

TEST_CASE("grid hits the endpoints and zero exactly", "[figures]") {
    const XGrid grid{-1.0, 2.0, 301};
    REQUIRE(grid.at(0) == -1.0);
    REQUIRE(grid.at(300) == 2.0);
    REQUIRE(grid.at(100) == 0.0);
}

TEST_CASE("meiosis figure layout and spot values", "[figures]") {
    const auto lines = lines_of(render_figure_csv(default_figure_spec(FigureId::MeiosisGain)));
    REQUIRE(lines.size() == 202);
    REQUIRE(lines[0] == "x,meiosis_p0.5,sure_p0.5,meiosis_p0.1,sure_p0.1");
    // x = 1 sits at index 100 of the [0,2] grid
    const auto row = cells_of(lines[101]);
    REQUIRE(row[0] == "1");
    REQUIRE(row[1] == "0.414213562");
    REQUIRE(row[2] == "0.5");
    const auto origin = cells_of(lines[1]);
    REQUIRE(origin[0] == "0");
    REQUIRE(origin[1] == "0");
    REQUIRE(origin[2] == "0");
}

TEST_CASE("hyperbole figure layout", "[figures]") {
    const auto lines = lines_of(render_figure_csv(default_figure_spec(FigureId::HyperboleLoss)));
    REQUIRE(lines.size() == 102);
    REQUIRE(lines[0] == "x,hyperbole_p0.5,hyperbole_p0.1,line_x");
    const auto first = cells_of(lines[1]);
    REQUIRE(first[0] == "-1");
    REQUIRE(first[1] == "-0.75");  // rho = 1 curve endpoint
    REQUIRE(first[3] == "-1");
    const auto last = cells_of(lines[101]);
    REQUIRE(last[0] == "0");
    REQUIRE(last[1] == "0");
    REQUIRE(last[3] == "0");
}

TEST_CASE("contrast figure layout and spot values", "[figures]") {
    const auto lines = lines_of(render_figure_csv(default_figure_spec(FigureId::ContrastRatio)));
    REQUIRE(lines.size() == 302);
    REQUIRE(lines[0] == "x,cr_p0.5,cr_p0.05,cr_p0.95,band_lo,band_hi");
    const auto first = cells_of(lines[1]);
    REQUIRE(first[0] == "-1");
    REQUIRE(first[1] == "-1.24938737");
    REQUIRE(first[4] == "-0.5");
    REQUIRE(first[5] == "0.5");
    for (const auto& line : lines_of(render_figure_csv(default_figure_spec(FigureId::ContrastRatio)))) {
        if (line == lines[0])
            continue;
        const auto cells = cells_of(line);
        REQUIRE(cells[4] == "-0.5");
        REQUIRE(cells[5] == "0.5");
    }
}

TEST_CASE("s-curve figure layout", "[figures]") {
    const auto lines = lines_of(render_figure_csv(default_figure_spec(FigureId::SCurve)));
    REQUIRE(lines.size() == 302);
    REQUIRE(lines[0] == "x,s_p0.5,line_x,sure_p0.5");
    const auto zero = cells_of(lines[101]);
    REQUIRE(zero[0] == "0");
    REQUIRE(zero[1] == "0");  // branches meet at the origin
    const auto one = cells_of(lines[201]);
    REQUIRE(one[0] == "1");
    REQUIRE(one[1] == "0.414213562");
    REQUIRE(one[3] == "0.5");
}

TEST_CASE("figure rendering is byte-stable", "[figures]") {
    for (FigureId id : {FigureId::MeiosisGain, FigureId::HyperboleLoss, FigureId::ContrastRatio,
                        FigureId::SCurve}) {
        const FigureSpec spec = default_figure_spec(id);
        REQUIRE(render_figure_csv(spec) == render_figure_csv(spec));
    }
}

TEST_CASE("figure validation", "[figures]") {
    FigureSpec spec = default_figure_spec(FigureId::MeiosisGain);
    spec.grid.count = 1;
    REQUIRE_THROWS_AS(render_figure_csv(spec), std::domain_error);
    spec = default_figure_spec(FigureId::MeiosisGain);
    spec.grid.min = 1.0;
    spec.grid.max = 1.0;
    REQUIRE_THROWS_AS(render_figure_csv(spec), std::domain_error);
    spec = default_figure_spec(FigureId::MeiosisGain);
    spec.grid.min = -0.5;
    REQUIRE_THROWS_AS(render_figure_csv(spec), std::domain_error);
    spec = default_figure_spec(FigureId::HyperboleLoss);
    spec.grid.max = 0.5;
    REQUIRE_THROWS_AS(render_figure_csv(spec), std::domain_error);
    spec = default_figure_spec(FigureId::SCurve);
    spec.curves.clear();
    REQUIRE_THROWS_AS(render_figure_csv(spec), std::domain_error);
    spec = default_figure_spec(FigureId::ContrastRatio);
    spec.threshold_db = 0.0;
    REQUIRE_THROWS_AS(render_figure_csv(spec), std::domain_error);
    spec = default_figure_spec(FigureId::ContrastRatio);
    spec.curves = {{0.0, 1.0}};
    REQUIRE_THROWS_AS(render_figure_csv(spec), std::domain_error);
}

TEST_CASE("figure csv writes to disk", "[figures]") {
    const std::string path = "test_fig_out.csv";
    const FigureSpec spec = default_figure_spec(FigureId::SCurve);
    write_figure_csv(spec, path);
    REQUIRE(read_text_file(path) == render_figure_csv(spec));
    std::remove(path.c_str());
    REQUIRE_THROWS_AS(write_figure_csv(spec, "/nonexistent/dir/fig.csv"), IoError);
}
