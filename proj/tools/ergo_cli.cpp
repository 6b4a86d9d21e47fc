// ergo: evaluate gamble pairs, emit figure datasets, run wealth
// simulations, analyze survey agreement. Exit codes: 0 success, 2 domain or
// validation error, 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ergo/ergo.hpp"

namespace {

using nlohmann::json;

const char* choice_name(ergo::Choice c) {
    switch (c) {
    case ergo::Choice::Sure: return "SureOption";
    case ergo::Choice::Risky: return "RiskyOption";
    case ergo::Choice::Indifferent: return "Indifferent";
    }
    return "?";
}

const char* classification_name(ergo::Distinguishability d) {
    switch (d) {
    case ergo::Distinguishability::Fuzzy: return "Fuzzy";
    case ergo::Distinguishability::Crisp: return "Crisp";
    case ergo::Distinguishability::Degenerate: return "Degenerate";
    }
    return "?";
}

// Optional key=value file supplying fallback values for rho and
// threshold_db. '#' starts a comment; blank lines are skipped.
struct FileConfig {
    std::optional<double> rho;
    std::optional<double> threshold_db;
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

FileConfig load_file_config(const std::string& path) {
    const std::string text = ergo::read_text_file(path);
    FileConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string entry = trim(line);
        if (entry.empty() || entry[0] == '#')
            continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config " + path + ": line " + std::to_string(lineno) +
                                        ": expected key=value");
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        double parsed = 0.0;
        try {
            std::size_t used = 0;
            parsed = std::stod(value, &used);
            if (used != value.size())
                throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw std::invalid_argument("config " + path + ": line " + std::to_string(lineno) +
                                        ": value of '" + key + "' is not a number");
        }
        if (key == "rho")
            cfg.rho = parsed;
        else if (key == "threshold_db")
            cfg.threshold_db = parsed;
        else
            throw std::invalid_argument("config " + path + ": unknown key '" + key + "'");
    }
    return cfg;
}

struct DecideArgs {
    std::string domain;
    double p = 0.0;
    double stake = 0.0;
    double initial_wealth = 0.0;
    double rho = ergo::kDefaultRho;
    bool rho_given = false;
    bool as_json = false;
};

int run_decide(const DecideArgs& args, const FileConfig& cfg) {
    const double rho = args.rho_given ? args.rho : cfg.rho.value_or(ergo::kDefaultRho);
    const ergo::Domain domain = args.domain == "gain" ? ergo::Domain::Gain : ergo::Domain::Loss;
    const ergo::GambleSpec gamble(domain, args.stake, args.initial_wealth,
                                  ergo::Probability(args.p), rho);
    const ergo::Decision decision = ergo::decide(gamble);
    if (args.as_json) {
        json out = {
            {"chosen", choice_name(decision.chosen)},
            {"domain", args.domain},
            {"p", args.p},
            {"rho", rho},
            {"x", gamble.hypothetical_change()},
            {"sure_change", decision.sure_change},
            {"risky_change", decision.risky_change},
        };
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "chosen: " << choice_name(decision.chosen) << "\n"
                  << "sure_change: " << ergo::format_g9(decision.sure_change) << "\n"
                  << "risky_change: " << ergo::format_g9(decision.risky_change) << "\n";
    }
    return 0;
}

struct FigureArgs {
    std::string id;
    std::string out = "-";
    double xmin = 0.0;
    double xmax = 0.0;
    std::size_t samples = 0;
    bool xmin_given = false;
    bool xmax_given = false;
    bool samples_given = false;
    std::vector<double> ps;
    double rho = ergo::kDefaultRho;
    bool rho_given = false;
    double threshold = ergo::kDefaultThresholdDb;
    bool threshold_given = false;
};

int run_figure(const FigureArgs& args, const FileConfig& cfg) {
    ergo::FigureSpec spec = ergo::default_figure_spec(ergo::parse_figure_id(args.id));
    if (args.xmin_given)
        spec.grid.min = args.xmin;
    if (args.xmax_given)
        spec.grid.max = args.xmax;
    if (args.samples_given)
        spec.grid.count = args.samples;

    std::optional<double> rho;
    if (args.rho_given)
        rho = args.rho;
    else if (cfg.rho)
        rho = cfg.rho;
    if (!args.ps.empty()) {
        spec.curves.clear();
        for (double p : args.ps)
            spec.curves.push_back({p, rho.value_or(ergo::kDefaultRho)});
    } else if (rho) {
        for (auto& curve : spec.curves)
            curve.rho = *rho;
    }
    if (args.threshold_given)
        spec.threshold_db = args.threshold;
    else if (cfg.threshold_db)
        spec.threshold_db = *cfg.threshold_db;

    const std::string csv = ergo::render_figure_csv(spec);
    if (args.out == "-")
        std::cout << csv;
    else
        ergo::write_text_file(args.out, csv);
    return 0;
}

struct SimArgs {
    double p = 0.0;
    double x = 0.0;
    std::uint64_t steps = 10000;
    std::uint64_t trajectories = 1;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out;
    bool divergence = false;
    bool as_json = false;
};

int run_simulate(const SimArgs& args) {
    const ergo::Probability p(args.p);
    if (args.divergence) {
        const auto rows = ergo::divergence_demo(p, args.x, args.steps, args.trajectories,
                                                args.seed);
        const std::string csv = ergo::render_divergence_csv(rows);
        if (args.out.empty())
            std::cout << csv;
        else
            ergo::write_text_file(args.out, csv);
        return 0;
    }

    const ergo::SimConfig cfg(p, args.x, args.steps, args.trajectories, args.seed);
    ergo::SimSummary summary;
    if (!args.out.empty()) {
        std::ofstream file(args.out, std::ios::binary);
        if (!file)
            throw ergo::IoError("cannot open '" + args.out + "' for writing");
        summary = ergo::simulate(cfg, args.threads, &file);
        if (!file)
            throw ergo::IoError("write to '" + args.out + "' failed");
    } else {
        summary = ergo::simulate(cfg, args.threads);
    }

    if (args.as_json) {
        json out = {
            {"empirical_growth_factor", summary.empirical_growth_factor},
            {"analytic_growth_factor", summary.analytic_growth_factor},
            {"ensemble_mean_factor", summary.ensemble_mean_factor},
            {"ensemble_mean_analytic", summary.ensemble_mean_analytic},
            {"relative_error", summary.relative_error},
            {"ruined_trajectories", summary.ruined_trajectories},
        };
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "empirical_growth_factor: " << ergo::format_g9(summary.empirical_growth_factor)
                  << "\n"
                  << "analytic_growth_factor: " << ergo::format_g9(summary.analytic_growth_factor)
                  << "\n"
                  << "ensemble_mean_factor: " << ergo::format_g9(summary.ensemble_mean_factor)
                  << "\n"
                  << "ensemble_mean_analytic: " << ergo::format_g9(summary.ensemble_mean_analytic)
                  << "\n"
                  << "relative_error: " << ergo::format_g9(summary.relative_error) << "\n"
                  << "ruined_trajectories: " << summary.ruined_trajectories << "\n";
    }
    return 0;
}

struct SurveyArgs {
    std::string input;
    double rho = ergo::kDefaultRho;
    bool rho_given = false;
    double threshold = ergo::kDefaultThresholdDb;
    bool threshold_given = false;
    bool as_json = false;
};

int run_survey(const SurveyArgs& args, const FileConfig& cfg) {
    const auto problems =
        args.input.empty() ? ergo::bundled_survey() : ergo::load_survey(args.input);

    const double threshold = args.threshold_given
                                 ? args.threshold
                                 : cfg.threshold_db.value_or(ergo::kDefaultThresholdDb);
    std::optional<double> rho_override;
    if (args.rho_given)
        rho_override = args.rho;
    else if (cfg.rho)
        rho_override = cfg.rho;

    std::vector<ergo::AgreementReport> reports;
    reports.reserve(problems.size());
    for (const auto& problem : problems)
        reports.push_back(ergo::analyze(problem, threshold, rho_override));

    std::size_t matched = 0;
    for (const auto& r : reports)
        if (r.agree)
            ++matched;

    if (args.as_json) {
        json items = json::array();
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& r = reports[i];
            const auto& problem = problems[i];
            items.push_back({
                {"id", r.id},
                {"count_a", problem.count_a},
                {"count_b", problem.count_b},
                {"majority_share", r.majority_share},
                {"entropy_bits", r.entropy_bits},
                {"model_decision", choice_name(r.model_decision)},
                {"model_choice", std::string(1, r.model_choice)},
                {"observed_majority", std::string(1, r.observed_majority)},
                {"agree", r.agree},
                {"cr_db", r.cr_db},
                {"classification", classification_name(r.classification)},
                {"threshold_db", threshold},
            });
        }
        json out = {
            {"agreement", {{"matched", matched}, {"total", reports.size()}}},
            {"problems", items},
        };
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("%-12s %-7s %-11s %-12s %-14s %-8s %-5s %-12s %s\n", "id", "counts",
                    "majority", "entropy_bits", "model", "observed", "agree", "cr_db", "class");
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& r = reports[i];
            const auto& problem = problems[i];
            const std::string counts =
                std::to_string(problem.count_a) + "/" + std::to_string(problem.count_b);
            const std::string model =
                std::string(choice_name(r.model_decision)) + "->" + r.model_choice;
            std::printf("%-12s %-7s %-11s %-12s %-14s %-8c %-5s %-12s %s\n", r.id.c_str(),
                        counts.c_str(), ergo::format_g9(r.majority_share).c_str(),
                        ergo::format_g9(r.entropy_bits).c_str(), model.c_str(),
                        r.observed_majority, r.agree ? "yes" : "no",
                        ergo::format_g9(r.cr_db).c_str(), classification_name(r.classification));
        }
        std::printf("agreement: %zu/%zu\n", matched, reports.size());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-average decision analysis for simple gambles"};
    app.require_subcommand(1);
    app.fallthrough(true);

    std::string config_path;
    app.add_option("--config", config_path, "key=value file with defaults for rho, threshold_db");

    DecideArgs decide_args;
    auto* decide_cmd = app.add_subcommand("decide", "Evaluate one sure/risky gamble pair");
    decide_cmd->add_option("--domain", decide_args.domain, "gain or loss")
        ->required()
        ->check(CLI::IsMember({"gain", "loss"}));
    decide_cmd->add_option("--p", decide_args.p, "probability of the risky outcome")->required();
    decide_cmd->add_option("--M", decide_args.stake, "amount at stake")->required();
    decide_cmd->add_option("--W0", decide_args.initial_wealth, "initial wealth")->required();
    auto* decide_rho = decide_cmd->add_option("--rho", decide_args.rho,
                                              "loss convexification rate (default 1.05)");
    decide_cmd->add_flag("--json", decide_args.as_json, "emit JSON instead of text");

    FigureArgs figure_args;
    auto* figure_cmd = app.add_subcommand("figure", "Emit one figure dataset as CSV");
    figure_cmd->add_option("--id", figure_args.id, "fig1, fig2, fig3 or fig4")->required();
    figure_cmd->add_option("--out", figure_args.out, "output path, '-' for stdout");
    auto* fig_xmin = figure_cmd->add_option("--xmin", figure_args.xmin, "grid minimum");
    auto* fig_xmax = figure_cmd->add_option("--xmax", figure_args.xmax, "grid maximum");
    auto* fig_samples = figure_cmd->add_option("--samples", figure_args.samples, "grid size");
    figure_cmd->add_option("--p", figure_args.ps, "curve p values (repeatable)");
    auto* fig_rho = figure_cmd->add_option("--rho", figure_args.rho, "curve rho");
    auto* fig_threshold =
        figure_cmd->add_option("--threshold", figure_args.threshold, "fuzziness band, dB");

    SimArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Run the repeated-gamble wealth simulation");
    sim_cmd->add_option("--p", sim_args.p, "per-step success probability")->required();
    sim_cmd->add_option("--x", sim_args.x, "relative change on success")->required();
    sim_cmd->add_option("--steps", sim_args.steps, "steps per trajectory");
    sim_cmd->add_option("--trajectories", sim_args.trajectories, "number of trajectories");
    sim_cmd->add_option("--seed", sim_args.seed, "master seed");
    sim_cmd->add_option("--threads", sim_args.threads, "worker threads");
    sim_cmd->add_option("--out", sim_args.out, "CSV path: wealth paths, or the divergence table");
    sim_cmd->add_flag("--divergence", sim_args.divergence,
                      "emit the ensemble-vs-median divergence table instead of a summary");
    sim_cmd->add_flag("--json", sim_args.as_json, "emit JSON summary instead of text");

    SurveyArgs survey_args;
    auto* survey_cmd = app.add_subcommand("survey", "Analyze survey agreement with the model");
    survey_cmd->add_option("--input", survey_args.input,
                           "survey CSV path (default: bundled dataset)");
    auto* survey_rho = survey_cmd->add_option("--rho", survey_args.rho,
                                              "override every problem's rho");
    auto* survey_threshold =
        survey_cmd->add_option("--threshold", survey_args.threshold, "fuzziness band, dB");
    survey_cmd->add_flag("--json", survey_args.as_json, "emit JSON instead of text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    decide_args.rho_given = decide_rho->count() > 0;
    figure_args.xmin_given = fig_xmin->count() > 0;
    figure_args.xmax_given = fig_xmax->count() > 0;
    figure_args.samples_given = fig_samples->count() > 0;
    figure_args.rho_given = fig_rho->count() > 0;
    figure_args.threshold_given = fig_threshold->count() > 0;
    survey_args.rho_given = survey_rho->count() > 0;
    survey_args.threshold_given = survey_threshold->count() > 0;

    try {
        FileConfig cfg;
        if (!config_path.empty())
            cfg = load_file_config(config_path);
        if (decide_cmd->parsed())
            return run_decide(decide_args, cfg);
        if (figure_cmd->parsed())
            return run_figure(figure_args, cfg);
        if (sim_cmd->parsed())
            return run_simulate(sim_args);
        if (survey_cmd->parsed())
            return run_survey(survey_args, cfg);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const ergo::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ergo::CsvParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
