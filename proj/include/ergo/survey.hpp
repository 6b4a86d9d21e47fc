#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/contrast.hpp"
#include "ergo/gamble.hpp"
#include "ergo/io.hpp"

namespace ergo {

// Shannon entropy of a binary split, in bits, with 0 log 0 taken as 0.
inline double binary_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0))
        throw std::domain_error("binary_entropy: requires q in [0, 1]");
    if (q == 0.0 || q == 1.0)
        return 0.0;
    return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

// One two-option questionnaire item together with the gamble it encodes.
// sure_option says which of the printed options ('a' or 'b') is the sure one.
struct SurveyProblem {
    std::string id;
    std::string description;
    GambleSpec gamble;
    std::uint64_t count_a;
    std::uint64_t count_b;
    char sure_option;
};

struct AgreementReport {
    std::string id;
    double majority_share;
    double entropy_bits;
    Choice model_decision;
    char model_choice;       // 'a'/'b', '-' when indifferent
    char observed_majority;  // 'a'/'b', '-' when the counts tie
    bool agree;
    double cr_db;
    Distinguishability classification;
};

inline AgreementReport analyze(const SurveyProblem& problem,
                               double threshold_db = kDefaultThresholdDb,
                               std::optional<double> rho_override = std::nullopt) {
    if (problem.sure_option != 'a' && problem.sure_option != 'b')
        throw std::invalid_argument("analyze: sure_option must be 'a' or 'b'");
    const std::uint64_t total = problem.count_a + problem.count_b;
    if (total < 1)
        throw std::invalid_argument("analyze: count_a + count_b must be >= 1");

    GambleSpec gamble = problem.gamble;
    if (rho_override)
        gamble = GambleSpec(gamble.domain, gamble.stake, gamble.initial_wealth, gamble.p,
                            *rho_override);

    AgreementReport report;
    report.id = problem.id;
    const std::uint64_t top = std::max(problem.count_a, problem.count_b);
    report.majority_share = static_cast<double>(top) / static_cast<double>(total);
    report.entropy_bits = binary_entropy(static_cast<double>(problem.count_a) /
                                         static_cast<double>(total));

    const Decision decision = decide(gamble);
    report.model_decision = decision.chosen;
    const char risky_option = problem.sure_option == 'a' ? 'b' : 'a';
    switch (decision.chosen) {
    case Choice::Sure: report.model_choice = problem.sure_option; break;
    case Choice::Risky: report.model_choice = risky_option; break;
    case Choice::Indifferent: report.model_choice = '-'; break;
    }
    if (problem.count_a > problem.count_b)
        report.observed_majority = 'a';
    else if (problem.count_b > problem.count_a)
        report.observed_majority = 'b';
    else
        report.observed_majority = '-';
    report.agree = report.model_choice != '-' && report.model_choice == report.observed_majority;

    const double x = gamble.hypothetical_change();
    report.classification = classify(gamble.p, x, threshold_db).classification;
    report.cr_db = report.classification == Distinguishability::Degenerate
                       ? 0.0
                       : contrast_db(gamble.p, x);
    return report;
}

namespace detail {

inline constexpr std::string_view kSurveyHeader =
    "id,description,domain,p,M,W0,rho,count_a,count_b,sure_option";

inline double parse_csv_double(const std::string& field, std::size_t row, std::size_t col) {
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw CsvParseError(row, col, "expected a number, got \"" + field + "\"");
    }
}

inline std::uint64_t parse_csv_count(const std::string& field, std::size_t row, std::size_t col) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(field, &used);
        if (used != field.size())
            throw std::invalid_argument("trailing characters");
        if (v < 0)
            throw std::invalid_argument("negative");
        return static_cast<std::uint64_t>(v);
    } catch (const CsvParseError&) {
        throw;
    } catch (const std::exception&) {
        throw CsvParseError(row, col, "expected a nonnegative integer, got \"" + field + "\"");
    }
}

}  // namespace detail

// Parses survey CSV text. The header row is required and fixed; every data
// row carries exactly 10 fields. Malformed input raises CsvParseError with
// 1-based row and column; semantic violations raise std::invalid_argument.
inline std::vector<SurveyProblem> parse_survey_csv(std::string_view text) {
    std::vector<std::string> lines;
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos)
                end = text.size();
            std::string line(text.substr(start, end - start));
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            lines.push_back(std::move(line));
            start = end + 1;
        }
        while (!lines.empty() && lines.back().empty())
            lines.pop_back();
    }
    if (lines.empty())
        throw CsvParseError(1, 1, "empty survey file");

    const auto header = split_csv_record(lines[0], 1);
    const auto expected = split_csv_record(std::string(detail::kSurveyHeader), 1);
    if (header.size() != expected.size())
        throw CsvParseError(1, header.size(),
                            "expected header \"" + std::string(detail::kSurveyHeader) + "\"");
    for (std::size_t c = 0; c < expected.size(); ++c)
        if (header[c] != expected[c])
            throw CsvParseError(1, c + 1, "expected header field \"" + expected[c] + "\", got \"" +
                                              header[c] + "\"");

    std::vector<SurveyProblem> problems;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::size_t row = r + 1;
        if (lines[r].empty())
            continue;
        const auto fields = split_csv_record(lines[r], row);
        if (fields.size() != 10)
            throw CsvParseError(row, fields.size(),
                                "expected 10 fields, got " + std::to_string(fields.size()));

        const std::string& id = fields[0];
        if (id.empty())
            throw CsvParseError(row, 1, "id must not be empty");

        Domain domain;
        if (fields[2] == "gain")
            domain = Domain::Gain;
        else if (fields[2] == "loss")
            domain = Domain::Loss;
        else
            throw CsvParseError(row, 3, "domain must be \"gain\" or \"loss\", got \"" + fields[2] +
                                            "\"");

        const double p = detail::parse_csv_double(fields[3], row, 4);
        const double stake = detail::parse_csv_double(fields[4], row, 5);
        const double initial_wealth = detail::parse_csv_double(fields[5], row, 6);
        const double rho = detail::parse_csv_double(fields[6], row, 7);
        const std::uint64_t count_a = detail::parse_csv_count(fields[7], row, 8);
        const std::uint64_t count_b = detail::parse_csv_count(fields[8], row, 9);
        if (fields[9] != "a" && fields[9] != "b")
            throw CsvParseError(row, 10,
                                "sure_option must be \"a\" or \"b\", got \"" + fields[9] + "\"");
        if (count_a + count_b < 1)
            throw std::invalid_argument("survey problem \"" + id +
                                        "\": count_a + count_b must be >= 1");

        try {
            SurveyProblem problem{id,
                                  fields[1],
                                  GambleSpec(domain, stake, initial_wealth, Probability(p), rho),
                                  count_a,
                                  count_b,
                                  fields[9][0]};
            problems.push_back(std::move(problem));
        } catch (const std::domain_error& e) {
            throw std::invalid_argument("survey problem \"" + id + "\": " + e.what());
        }
    }
    return problems;
}

inline std::vector<SurveyProblem> load_survey(const std::string& path) {
    return parse_survey_csv(read_text_file(path));
}

// The questionnaire shipped with the library: 67 respondents, three items.
// Identical bytes to data/survey.csv.
inline std::string_view bundled_survey_csv() {
    return "id,description,domain,p,M,W0,rho,count_a,count_b,sure_option\n"
           "problem-1,\"Even chance of losing a one-dollar bankroll, or a sure half-dollar charge\",loss,0.5,1,1,1.05,1,66,b\n"
           "problem-2,\"Small chance of a 200M windfall, or a sure 10M\",gain,0.05,200000000,10526315.79,1.05,3,64,b\n"
           "problem-3,\"Likely loss of the entire 200M, or a sure 190M charge\",loss,0.95,200000000,200000000,1.05,18,49,b\n";
}

inline std::vector<SurveyProblem> bundled_survey() {
    return parse_survey_csv(bundled_survey_csv());
}

}  // namespace ergo
