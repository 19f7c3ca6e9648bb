#pragma once

// Rule-based classifiers for agent responses. Parse failure is a value, not
// an exception; the inverse parser can additionally request one re-prompt
// for ambiguous chain-of-thought output.

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>

namespace choicelab {

enum class ForwardVerdict { a, b, failed };

enum class InverseVerdict { first, second, tie, needs_reprompt };

namespace detail {

inline std::string lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

inline std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n.:;,!\"'*()");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n.:;,!\"'*()");
    return s.substr(b, e - b + 1);
}

inline std::string last_line(const std::string& s) {
    std::size_t end = s.find_last_not_of(" \t\r\n");
    if (end == std::string::npos) return "";
    std::size_t begin = s.rfind('\n', end);
    return s.substr(begin == std::string::npos ? 0 : begin + 1,
                    end - (begin == std::string::npos ? 0 : begin + 1) + 1);
}

// Position of the last standalone occurrence of `word` (no letter/digit
// neighbors), or npos.
inline std::size_t last_token(const std::string& text, const std::string& word) {
    std::size_t best = std::string::npos;
    std::size_t pos = text.find(word);
    while (pos != std::string::npos) {
        const bool left_ok =
            pos == 0 || !std::isalnum(static_cast<unsigned char>(text[pos - 1]));
        const std::size_t after = pos + word.size();
        const bool right_ok =
            after >= text.size() ||
            !std::isalnum(static_cast<unsigned char>(text[after]));
        if (left_ok && right_ok) best = pos;
        pos = text.find(word, pos + 1);
    }
    return best;
}

}  // namespace detail

// Cascade: bare letter; "Machine A/B" mention (last wins); standalone letter
// on the final line; otherwise failure.
inline ForwardVerdict parse_forward(const std::string& raw) {
    const std::string text = detail::lower(raw);
    const std::string bare = detail::strip(text);
    if (bare == "a") return ForwardVerdict::a;
    if (bare == "b") return ForwardVerdict::b;

    const std::size_t ma = detail::last_token(text, "machine a");
    const std::size_t mb = detail::last_token(text, "machine b");
    if (ma != std::string::npos || mb != std::string::npos) {
        if (mb == std::string::npos) return ForwardVerdict::a;
        if (ma == std::string::npos) return ForwardVerdict::b;
        return ma > mb ? ForwardVerdict::a : ForwardVerdict::b;
    }

    const std::string tail = detail::lower(detail::last_line(raw));
    const std::size_t la = detail::last_token(tail, "a");
    const std::size_t lb = detail::last_token(tail, "b");
    if (la != std::string::npos || lb != std::string::npos) {
        if (lb == std::string::npos) return ForwardVerdict::a;
        if (la == std::string::npos) return ForwardVerdict::b;
        return la > lb ? ForwardVerdict::a : ForwardVerdict::b;
    }
    return ForwardVerdict::failed;
}

// Detects "Choice 1" / "Choice 2" (last mention wins) or tie phrasing;
// anything else asks for one re-prompt.
inline InverseVerdict parse_inverse(const std::string& raw) {
    const std::string text = detail::lower(raw);
    const std::size_t c1 = text.rfind("choice 1");
    const std::size_t c2 = text.rfind("choice 2");
    if (c1 != std::string::npos && c2 != std::string::npos)
        return c1 > c2 ? InverseVerdict::first : InverseVerdict::second;
    if (c1 != std::string::npos) return InverseVerdict::first;
    if (c2 != std::string::npos) return InverseVerdict::second;

    const std::string bare = detail::strip(text);
    if (bare == "1") return InverseVerdict::first;
    if (bare == "2") return InverseVerdict::second;
    for (const char* phrase :
         {"tie", "equally", "equal", "neither", "both choices", "the same"})
        if (text.find(phrase) != std::string::npos) return InverseVerdict::tie;
    return InverseVerdict::needs_reprompt;
}

// Follow-up sent when the classifier cannot categorize a response.
inline const char* reprompt_text() {
    return "Please classify your previous response as exactly one of "
           "\"Choice 1\", \"Choice 2\", or \"Tie\". Respond with only that "
           "phrase.";
}

// Proportion-task output: a json object with per-machine percentages, an
// "NN/MM" split, or "A: NN%, B: MM%" phrasing. Returns P(machine A).
inline std::optional<double> parse_proportion(const std::string& raw) {
    const std::string text = detail::lower(raw);

    auto number_after = [&](std::size_t pos) -> std::optional<double> {
        while (pos < text.size() &&
               !std::isdigit(static_cast<unsigned char>(text[pos])) &&
               text[pos] != '.' && text[pos] != '-')
            ++pos;
        if (pos >= text.size()) return std::nullopt;
        try {
            return std::stod(text.substr(pos));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };

    // "machine a": 60, "machine b": 40 (json or prose); bare "a: 60".
    std::optional<double> pa, pb;
    for (const char* key : {"machine a", "\"a\"", "a:"}) {
        const std::size_t pos = text.rfind(key);
        if (pos != std::string::npos && !pa)
            pa = number_after(pos + std::string(key).size());
        if (pa) break;
    }
    for (const char* key : {"machine b", "\"b\"", "b:"}) {
        const std::size_t pos = text.rfind(key);
        if (pos != std::string::npos && !pb)
            pb = number_after(pos + std::string(key).size());
        if (pb) break;
    }
    if (pa && pb && *pa + *pb > 0.0) {
        const double p = *pa / (*pa + *pb);
        if (p >= 0.0 && p <= 1.0) return p;
    }
    if (pa && !pb && *pa >= 0.0 && *pa <= 100.0)
        return *pa > 1.0 ? *pa / 100.0 : *pa;

    // "60/40" split.
    const std::size_t slash = text.find('/');
    if (slash != std::string::npos && slash > 0) {
        std::size_t start = slash;
        while (start > 0 &&
               (std::isdigit(static_cast<unsigned char>(text[start - 1])) ||
                text[start - 1] == '.'))
            --start;
        if (start < slash) {
            try {
                const double a = std::stod(text.substr(start, slash - start));
                const double b = std::stod(text.substr(slash + 1));
                if (a + b > 0.0 && a >= 0.0 && b >= 0.0) return a / (a + b);
            } catch (const std::exception&) {
            }
        }
    }
    return std::nullopt;
}

}  // namespace choicelab
