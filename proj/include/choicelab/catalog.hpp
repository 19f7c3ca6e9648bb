#pragma once

// The 47 observed decisions used in the preference-inference experiment.
// The chosen option is always the first one listed, and it always contains
// the target item x. Structures are context-independent; items are mapped
// to candies or shocks only at prompt-rendering time.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "choicelab/decisions.hpp"

namespace choicelab {

inline const std::vector<DecisionStructure>& catalog_47() {
    static const std::vector<DecisionStructure> catalog = [] {
        const std::vector<std::vector<std::string>> rows = {
            {"dcbax"},
            {"cbax"},
            {"bax"},
            {"ax"},
            {"x"},
            {"cbax", "dbax"},
            {"ax", "bx", "cx", "dx"},
            {"bax", "cax"},
            {"bax", "bcx", "bdx"},
            {"bax", "dcx"},
            {"ax", "bx"},
            {"bax", "cax", "bdx"},
            {"ax", "bx", "cx"},
            {"cbax", "d"},
            {"bax", "c"},
            {"ax", "b"},
            {"bax", "c", "d"},
            {"bax", "dc"},
            {"ax", "b", "c"},
            {"ax", "bx", "dc"},
            {"bax", "bdc"},
            {"ax", "bx", "cx", "ad"},
            {"ax", "b", "c", "d"},
            {"bax", "bcx", "bad"},
            {"ax", "bx", "ac"},
            {"ax", "cb"},
            {"cbax", "cbad"},
            {"ax", "b", "dc"},
            {"ax", "bx", "ac", "ad"},
            {"ax", "ab"},
            {"bax", "bac"},
            {"ax", "ab", "dc"},
            {"ax", "dcb"},
            {"x", "a"},
            {"bax", "bac", "bad"},
            {"ax", "ab", "ac"},
            {"ax", "ab", "ac", "ad"},
            {"x", "ba"},
            {"x", "a", "b"},
            {"x", "a", "b", "c"},
            {"x", "a", "cb"},
            {"x", "a", "b", "c", "d"},
            {"x", "cba"},
            {"x", "ba", "dc"},
            {"x", "a", "b", "dc"},
            {"x", "a", "dcb"},
            {"x", "dcba"},
        };
        std::vector<DecisionStructure> out;
        out.reserve(rows.size());
        for (const auto& row : rows) out.push_back(decision_from_letters(row, 0));
        return out;
    }();
    return catalog;
}

inline std::string option_letters(const std::vector<Item>& option) {
    std::string s;
    for (Item it : option) s.push_back(item_letter(it));
    return s;
}

// Record-file export mirroring the catalog layout: one row per decision,
// tab-separated option letter strings, then the chosen index.
inline void write_catalog(const std::vector<DecisionStructure>& decisions,
                          std::ostream& out) {
    out << "id\toption1\toption2\toption3\toption4\toption5\tchosen\n";
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        out << (i + 1);
        for (std::size_t j = 0; j < kItemCount; ++j) {
            out << '\t';
            if (j < decisions[i].options.size())
                out << option_letters(decisions[i].options[j]);
        }
        out << '\t' << decisions[i].chosen << '\n';
    }
}

inline std::vector<DecisionStructure> read_catalog(std::istream& in) {
    std::vector<DecisionStructure> out;
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("catalog file is empty");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string f;
        std::istringstream ss(line);
        while (std::getline(ss, f, '\t')) fields.push_back(f);
        if (fields.size() < 7)
            throw ValidationError("catalog row has too few fields: " + line);
        std::vector<std::string> options;
        for (std::size_t j = 1; j <= 5; ++j)
            if (!fields[j].empty()) options.push_back(fields[j]);
        out.push_back(decision_from_letters(
            options, static_cast<std::size_t>(std::stoul(fields[6]))));
    }
    return out;
}

inline std::vector<DecisionStructure> read_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open catalog file: " + path);
    return read_catalog(in);
}

}  // namespace choicelab
