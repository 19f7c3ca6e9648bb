#pragma once

// choices13k ingestion: the distribution describes each problem with
// high/low payoff columns per gamble plus a lottery expansion of gamble B's
// high branch (Symm / R-skew / L-skew shapes). Rows are normalized into the
// payoff/probability list representation at load time.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "choicelab/gamble.hpp"

namespace choicelab {

class IngestionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DatasetRecord {
    ChoiceProblem problem;
    ChoiceObservation observation;
};

struct Dataset {
    std::vector<DatasetRecord> records;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(trim(field));
    if (!line.empty() && line.back() == delim) out.push_back("");
    return out;
}

inline double binom_pmf(int k, int n, double p) {
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return c * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

// Merge duplicate payoff values (lottery outcomes can collide with the low
// branch), keep descending payoff order.
inline Gamble canonical(std::vector<std::pair<double, double>> outcomes) {
    std::sort(outcomes.begin(), outcomes.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    Gamble g;
    for (const auto& [x, p] : outcomes) {
        if (p <= 0.0) continue;
        if (!g.payoffs.empty() && g.payoffs.back() == x)
            g.probs.back() += p;
        else {
            g.payoffs.push_back(x);
            g.probs.push_back(p);
        }
    }
    return g;
}

}  // namespace detail

// Probabilities within kProbSumTol of 1 pass through; rounding drift up to
// 1e-6 (real CSV data carries it) is renormalized and reported; anything
// worse is rejected.
inline void normalize_probs(Gamble& g, std::vector<std::string>* warnings,
                            const std::string& where) {
    double sum = 0.0;
    for (double p : g.probs) sum += p;
    if (std::fabs(sum - 1.0) <= kProbSumTol) return;
    if (std::fabs(sum - 1.0) > 1e-6)
        throw ValidationError("probabilities sum to " + std::to_string(sum));
    for (double& p : g.probs) p /= sum;
    if (warnings)
        warnings->push_back(where + ": probabilities renormalized (sum " +
                            std::to_string(sum) + ")");
}

// Expand a high branch (payoff `high`, total probability `p_high`) into its
// lottery distribution. Shapes follow the distribution's conventions:
//   Symm    — lot_num outcomes high-k/2 .. high+k/2, k = lot_num-1,
//             Binomial(k, 1/2) weights.
//   R-skew  — outcomes high-(lot_num+1)+2^i, i = 1..lot_num, weights
//             1/2, 1/4, ..., with the last weight doubled; mean stays high.
//   L-skew  — mirror image.
inline std::vector<std::pair<double, double>> expand_lottery(
    double high, double p_high, const std::string& shape, int lot_num) {
    std::vector<std::pair<double, double>> out;
    const bool known = shape.empty() || shape == "-" || shape == "Symm" ||
                       shape == "R-skew" || shape == "L-skew";
    if (!known) throw IngestionError("unknown lottery shape '" + shape + "'");
    if (shape.empty() || shape == "-" || lot_num <= 1) {
        out.emplace_back(high, p_high);
        return out;
    }
    if (shape == "Symm") {
        const int k = lot_num - 1;
        for (int i = 0; i <= k; ++i)
            out.emplace_back(high - 0.5 * k + i,
                             p_high * detail::binom_pmf(i, k, 0.5));
        return out;
    }
    if (shape == "R-skew" || shape == "L-skew") {
        const double sign = (shape == "R-skew") ? 1.0 : -1.0;
        const double c = high - sign * (lot_num + 1);
        double w = 0.5;
        for (int i = 1; i <= lot_num; ++i) {
            if (i == lot_num) w *= 2.0;  // close the geometric tail
            out.emplace_back(c + sign * std::pow(2.0, i), p_high * w);
            w *= 0.5;
        }
        return out;
    }
    throw IngestionError("unreachable lottery shape");
}

// Load the delimiter-separated choices13k distribution file. Required
// columns: Problem, Ha, pHa, La, Hb, pHb, Lb, Amb, Feedback, n and a
// B-choice-rate column; LotShapeB/LotNumB (and the A-side variants) are
// honored when present. Probabilities off by up to 1e-6 are renormalized
// with a warning; anything worse is a row-level error.
inline Dataset load_choices13k(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open dataset file: " + path);

    Dataset ds;
    std::string header_line;
    if (!std::getline(in, header_line)) {
        ds.warnings.push_back("empty dataset file: " + path);
        return ds;
    }
    const char delim =
        header_line.find('\t') != std::string::npos ? '\t' : ',';
    auto header = detail::split(header_line, delim);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;

    auto find_col = [&](std::initializer_list<const char*> names,
                        bool required) -> std::optional<std::size_t> {
        for (const char* n : names) {
            auto it = col.find(n);
            if (it != col.end()) return it->second;
        }
        if (required)
            throw IngestionError(std::string("missing column '") +
                                 *names.begin() + "' in " + path);
        return std::nullopt;
    };

    const auto c_id = *find_col({"Problem", "problem", "id"}, true);
    const auto c_ha = *find_col({"Ha"}, true);
    const auto c_pha = *find_col({"pHa"}, true);
    const auto c_la = *find_col({"La"}, true);
    const auto c_hb = *find_col({"Hb"}, true);
    const auto c_phb = *find_col({"pHb"}, true);
    const auto c_lb = *find_col({"Lb"}, true);
    const auto c_amb = *find_col({"Amb", "amb"}, true);
    const auto c_fb = *find_col({"Feedback", "feedback"}, true);
    const auto c_n = *find_col({"n", "N"}, true);
    const auto c_brate = *find_col({"bRate", "B_rate", "bRate_mean", "pB"}, true);
    const auto c_shape_b = find_col({"LotShapeB", "LotShape"}, false);
    const auto c_num_b = find_col({"LotNumB", "LotNum"}, false);
    const auto c_shape_a = find_col({"LotShapeA"}, false);
    const auto c_num_a = find_col({"LotNumA"}, false);

    std::string line;
    std::size_t row = 1;  // 1-based data row for error messages
    std::set<std::string> ids;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        auto fields = detail::split(line, delim);
        auto fail = [&](const std::string& what) {
            throw IngestionError("row " + std::to_string(row) + ": " + what);
        };
        if (fields.size() < header.size()) fail("expected " +
                                                std::to_string(header.size()) +
                                                " fields, got " +
                                                std::to_string(fields.size()));
        auto num = [&](std::size_t c) -> double {
            try {
                return std::stod(fields.at(c));
            } catch (const std::exception&) {
                fail("malformed number '" + fields.at(c) + "' in column " +
                     header.at(c));
                return 0.0;
            }
        };

        DatasetRecord rec;
        rec.problem.id = fields.at(c_id);
        if (!ids.insert(rec.problem.id).second)
            fail("duplicate problem id '" + rec.problem.id + "'");

        auto build = [&](double h, double ph, double lo,
                         const std::optional<std::size_t>& c_shape,
                         const std::optional<std::size_t>& c_num) {
            if (ph < -kProbSumTol || ph > 1.0 + 1e-6)
                fail("probability " + std::to_string(ph) + " outside [0, 1]");
            std::string shape = c_shape ? fields.at(*c_shape) : "-";
            int lot_num = c_num ? static_cast<int>(num(*c_num)) : 1;
            auto outcomes = expand_lottery(h, ph, shape, lot_num);
            if (ph < 1.0) outcomes.emplace_back(lo, 1.0 - ph);
            Gamble g = detail::canonical(std::move(outcomes));
            normalize_probs(g, &ds.warnings, "row " + std::to_string(row));
            validate_gamble(g);
            return g;
        };

        try {
            rec.problem.gamble_a =
                build(num(c_ha), num(c_pha), num(c_la), c_shape_a, c_num_a);
            rec.problem.gamble_b =
                build(num(c_hb), num(c_phb), num(c_lb), c_shape_b, c_num_b);
        } catch (const ValidationError& e) {
            fail(e.what());
        }
        rec.problem.ambiguous = num(c_amb) != 0.0;
        rec.problem.feedback = num(c_fb) != 0.0;

        const double b_rate = num(c_brate);
        if (b_rate < 0.0 || b_rate > 1.0) fail("choice rate outside [0, 1]");
        rec.observation.problem_id = rec.problem.id;
        rec.observation.prop_a = 1.0 - b_rate;
        rec.observation.n_participants = static_cast<int>(num(c_n));
        if (rec.observation.n_participants < 15)
            fail("participant count " +
                 std::to_string(rec.observation.n_participants) +
                 " below the dataset floor of 15");

        ds.records.push_back(std::move(rec));
        ++row;
    }
    if (ds.records.empty())
        ds.warnings.push_back("dataset file has no data rows: " + path);
    return ds;
}

// Experiment subset: non-ambiguous problems with feedback.
inline Dataset filter_experiment_subset(const Dataset& ds) {
    Dataset out;
    out.warnings = ds.warnings;
    for (const auto& rec : ds.records)
        if (!rec.problem.ambiguous && rec.problem.feedback)
            out.records.push_back(rec);
    return out;
}

// Canonical line-delimited serialization:
//   {id, payoffs_a, probs_a, payoffs_b, probs_b, prop_a, n}
// Flags are included only when requested (unfiltered dumps).
inline void write_canonical(const Dataset& ds, std::ostream& out,
                            bool include_flags = false) {
    for (const auto& rec : ds.records) {
        nlohmann::json j;
        j["id"] = rec.problem.id;
        j["payoffs_a"] = rec.problem.gamble_a.payoffs;
        j["probs_a"] = rec.problem.gamble_a.probs;
        j["payoffs_b"] = rec.problem.gamble_b.payoffs;
        j["probs_b"] = rec.problem.gamble_b.probs;
        j["prop_a"] = rec.observation.prop_a;
        j["n"] = rec.observation.n_participants;
        if (include_flags) {
            j["ambiguous"] = rec.problem.ambiguous;
            j["feedback"] = rec.problem.feedback;
        }
        out << j.dump() << "\n";
    }
}

inline Dataset read_canonical(std::istream& in) {
    Dataset ds;
    std::string line;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const std::exception& e) {
            throw IngestionError("row " + std::to_string(row) +
                                 ": malformed record: " + e.what());
        }
        DatasetRecord rec;
        rec.problem.id = j.at("id").get<std::string>();
        rec.problem.gamble_a.payoffs = j.at("payoffs_a").get<std::vector<double>>();
        rec.problem.gamble_a.probs = j.at("probs_a").get<std::vector<double>>();
        rec.problem.gamble_b.payoffs = j.at("payoffs_b").get<std::vector<double>>();
        rec.problem.gamble_b.probs = j.at("probs_b").get<std::vector<double>>();
        rec.problem.ambiguous = j.value("ambiguous", false);
        rec.problem.feedback = j.value("feedback", true);
        rec.observation.problem_id = rec.problem.id;
        rec.observation.prop_a = j.at("prop_a").get<double>();
        rec.observation.n_participants = j.at("n").get<int>();
        try {
            const std::string where = "row " + std::to_string(row);
            normalize_probs(rec.problem.gamble_a, &ds.warnings, where);
            normalize_probs(rec.problem.gamble_b, &ds.warnings, where);
            validate_gamble(rec.problem.gamble_a);
            validate_gamble(rec.problem.gamble_b);
        } catch (const ValidationError& e) {
            throw IngestionError("row " + std::to_string(row) + ": " + e.what());
        }
        ds.records.push_back(std::move(rec));
        ++row;
    }
    return ds;
}

inline Dataset read_canonical_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open dataset file: " + path);
    return read_canonical(in);
}

}  // namespace choicelab
