#pragma once

#include <array>
#include <map>
#include <set>

#include "constructions.hpp"
#include "enumeration.hpp"

namespace slowsync {

/// Render a set of integers with maximal runs joined by "--" and gaps
/// separated by ", " (e.g. "2--15, 17, 21").
inline std::string render_int_set(const std::set<int>& vals) {
    std::string out;
    auto it = vals.begin();
    while (it != vals.end()) {
        int lo = *it, hi = lo;
        auto next = std::next(it);
        while (next != vals.end() && *next == hi + 1) {
            hi = *next;
            ++next;
        }
        if (!out.empty()) out += ", ";
        out += std::to_string(lo);
        if (hi > lo) out += "--" + std::to_string(hi);
        it = next;
    }
    return out;
}

/// Alphabet-size sets per synchronization length for the six class columns.
struct RangeTable {
    enum Column { kAll = 0, kMin, kSmin, kMax, kMaxMin, kMaxSmin, kColumns };
    std::map<int, std::array<std::set<int>, kColumns>> rows;  // by sync length

    std::array<std::set<int>, kColumns> totals() const {
        std::array<std::set<int>, kColumns> t;
        for (const auto& [len, cols] : rows)
            for (int c = 0; c < kColumns; ++c) t[c].insert(cols[c].begin(), cols[c].end());
        return t;
    }

    std::string render() const {
        static const char* names[kColumns] = {"all", "min", "smin", "max", "max-min", "max-smin"};
        std::ostringstream out;
        out << "len";
        for (int c = 0; c < kColumns; ++c) out << '\t' << names[c];
        out << '\n';
        for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
            out << it->first;
            for (int c = 0; c < kColumns; ++c) out << '\t' << render_int_set(it->second[c]);
            out << '\n';
        }
        auto t = totals();
        out << "all";
        for (int c = 0; c < kColumns; ++c) out << '\t' << render_int_set(t[c]);
        out << '\n';
        return out.str();
    }
};

/// Aggregate flagged records into alphabet-size range columns.  Records
/// lacking a flag simply do not contribute to that column.
inline RangeTable alphabet_ranges(const std::vector<SearchRecord>& records) {
    RangeTable t;
    for (const auto& r : records) {
        int len = r.subset_size ? r.subset_length : r.sync_length;
        auto& cols = t.rows[len];
        int a = r.dfa.alphabet();
        cols[RangeTable::kAll].insert(a);
        if (r.minimal.value_or(false)) cols[RangeTable::kMin].insert(a);
        if (r.semi_minimal.value_or(false)) cols[RangeTable::kSmin].insert(a);
        if (r.maximal.value_or(false)) {
            cols[RangeTable::kMax].insert(a);
            if (r.minimal.value_or(false)) cols[RangeTable::kMaxMin].insert(a);
            if (r.semi_minimal.value_or(false)) cols[RangeTable::kMaxSmin].insert(a);
        }
    }
    return t;
}

/// Two-pass maximal extraction over a corpus complete above the threshold:
/// pass 1 marks, for every corpus DFA and removable symbol preserving the
/// length, the canonical reduct as non-maximal; pass 2 re-verifies the
/// survivors directly.
inline std::vector<SearchRecord> extract_maximal(const std::vector<SearchRecord>& corpus,
                                                 int threshold) {
    std::set<Dfa> marked;
    for (const auto& rec : corpus) {
        const Dfa& d = rec.dfa;
        for (int x = 0; x < d.alphabet(); ++x) {
            Dfa rem = d.without_symbol(x);
            auto rl = sync_length(rem);
            if (rl && *rl == rec.sync_length) marked.insert(canonical_form(rem));
        }
    }
    std::vector<SearchRecord> out;
    for (const auto& rec : corpus) {
        if (rec.sync_length < threshold) continue;
        if (marked.count(rec.dfa)) continue;
        if (!classify(rec.dfa).maximal) continue;  // corpus may lack supersets
        SearchRecord r = rec;
        r.maximal = true;
        out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Largest worst-case subset synchronization length over all basic DFAs
/// with n states (up to relabeling), with the achieving classes.
struct SubsetAchievers {
    int max_length = 0;
    std::vector<SearchRecord> records;  // flagged: transitive, minimal
};

inline SubsetAchievers subset_achievers(int n, int s, unsigned annotate = kFlagTransitive |
                                                                          kFlagMinimal) {
    if (s < 2 || s > n) throw input_error("subset_achievers: subset size out of range");
    if (n > 5) throw capacity_error("subset_achievers: exhaustive search supported for up to 5 states");

    // the cycle-plus-merge family attains the maximum; start just above it
    Dfa witness = cerny(n);
    std::vector<uint8_t> dist = collapse_distances(witness);
    int start = 0;
    for (uint32_t S = 1; S < (1u << n); ++S)
        if (std::popcount(S) == s) start = std::max(start, static_cast<int>(dist[S]));

    SearchConfig cfg;
    cfg.n = n;
    cfg.subset_size = s;
    cfg.annotate = annotate;
    cfg.min_sync_length = start + 1;
    if (!enumerate_collect(cfg).empty())
        throw std::logic_error("subset_achievers: found a class above the expected maximum");

    cfg.min_sync_length = start;
    SubsetAchievers out;
    out.max_length = start;
    out.records = enumerate_collect(cfg);
    return out;
}

}  // namespace slowsync
