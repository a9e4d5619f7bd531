#pragma once

#include <sstream>
#include <string>
#include <string_view>

#include "dfa.hpp"

namespace slowsync {

// DFA text format: line 1 = "n m"; then m lines of n space-separated
// integers in [0,n).  Output is canonical: symbols sorted, one trailing
// newline.

inline Dfa parse_dfa(std::string_view text) {
    std::istringstream in{std::string(text)};
    long long n = 0, m = 0;
    if (!(in >> n >> m)) throw input_error("dfa text: malformed header");
    if (n < 2) throw input_error("dfa text: state count must be at least 2");
    if (n > kMaxStates) throw capacity_error("dfa text: more than 16 states not supported");
    if (m < 0 || m > (1LL << 48)) throw input_error("dfa text: malformed symbol count");

    std::vector<Transformation> syms;
    syms.reserve(static_cast<size_t>(m));
    std::vector<int> row(static_cast<size_t>(n));
    for (long long i = 0; i < m; ++i) {
        for (long long q = 0; q < n; ++q) {
            long long v;
            if (!(in >> v)) throw input_error("dfa text: truncated symbol row");
            if (v < 0 || v >= n) throw input_error("dfa text: entry out of range");
            row[static_cast<size_t>(q)] = static_cast<int>(v);
        }
        Transformation t(static_cast<int>(n), row);
        if (t.is_identity()) throw input_error("dfa text: identity symbol not allowed");
        syms.push_back(t);
    }
    long long extra;
    if (in >> extra) throw input_error("dfa text: trailing data");
    // Dfa constructor rejects duplicates.
    return Dfa(static_cast<int>(n), std::move(syms));
}

inline std::string format_dfa(const Dfa& d) {
    std::ostringstream out;
    out << d.size() << ' ' << d.alphabet() << '\n';
    for (const auto& t : d.symbols()) {
        for (int q = 0; q < d.size(); ++q) {
            if (q) out << ' ';
            out << t[q];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace slowsync
