#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dfa.hpp"

namespace slowsync {

enum class BoundVariant { L, Lp, Lpp };

enum class PruneMode { off, automatic, on };

struct SearchFilters {
    bool transitive = false;
    bool minimal = false;
    bool semi_minimal = false;
    bool maximal = false;

    bool any_class() const { return minimal || semi_minimal || maximal; }
};

enum FlagBits : unsigned {
    kFlagTransitive = 1,
    kFlagMinimal = 2,
    kFlagSemiMinimal = 4,
    kFlagMaximal = 8,
};

struct SearchConfig {
    int n = 0;
    int min_sync_length = 1;
    BoundVariant bound_variant = BoundVariant::Lpp;
    bool improved_bounds = true;
    PruneMode prune = PruneMode::automatic;
    std::optional<int> max_alphabet;
    SearchFilters filters;
    unsigned annotate = 0;  // extra flags to compute at emission
    int shard_count = 1;
    int shard_index = 0;
    int subset_size = 0;  // 0 = full-set synchronization target
    int jobs = 1;

    void validate() const {
        if (n < 2) throw input_error("search: need at least 2 states");
        if (n > 7) throw capacity_error("search: enumeration supported for up to 7 states");
        if (min_sync_length < 1) throw input_error("search: threshold must be at least 1");
        if (shard_count < 1 || shard_index < 0 || shard_index >= shard_count)
            throw input_error("search: invalid shard specification");
        if (subset_size != 0 && (subset_size < 2 || subset_size > n))
            throw input_error("search: subset size out of range");
        if (jobs < 1) throw input_error("search: job count must be positive");
    }

    unsigned required_flags() const {
        unsigned f = annotate;
        if (filters.transitive) f |= kFlagTransitive;
        if (filters.minimal) f |= kFlagMinimal;
        if (filters.semi_minimal) f |= kFlagSemiMinimal;
        if (filters.maximal) f |= kFlagMaximal;
        return f;
    }
};

/// One enumerated isomorphism class with its computed attributes.
struct SearchRecord {
    Dfa dfa;  // canonical form
    int sync_length = 0;
    int subset_size = 0;    // nonzero in subset mode
    int subset_length = 0;  // worst-case subset synchronization length
    std::optional<bool> transitive, minimal, semi_minimal, maximal;

    friend bool operator<(const SearchRecord& a, const SearchRecord& b) {
        if (a.dfa.size() != b.dfa.size()) return a.dfa.size() < b.dfa.size();
        if (a.dfa.alphabet() != b.dfa.alphabet()) return a.dfa.alphabet() < b.dfa.alphabet();
        if (a.sync_length != b.sync_length) return a.sync_length < b.sync_length;
        return a.dfa < b.dfa;
    }
    friend bool operator==(const SearchRecord& a, const SearchRecord& b) {
        return a.dfa == b.dfa;
    }
};

using RecordSink = std::function<void(const SearchRecord&)>;

/// Counts per (alphabet size, synchronization length), the layout of the
/// reference tables.  Merging is entrywise addition.
struct CountTable {
    std::map<std::pair<int, int>, uint64_t> cells;  // (alphabet, length) -> count

    void add(int alphabet, int length, uint64_t count = 1) {
        cells[{alphabet, length}] += count;
    }

    void merge(const CountTable& other) {
        for (const auto& [key, v] : other.cells) cells[key] += v;
    }

    uint64_t at(int alphabet, int length) const {
        auto it = cells.find({alphabet, length});
        return it == cells.end() ? 0 : it->second;
    }

    uint64_t column_total(int length) const {
        uint64_t t = 0;
        for (const auto& [key, v] : cells)
            if (key.second == length) t += v;
        return t;
    }

    uint64_t total() const {
        uint64_t t = 0;
        for (const auto& [key, v] : cells) t += v;
        return t;
    }

    bool empty() const { return cells.empty(); }

    friend bool operator==(const CountTable& a, const CountTable& b) { return a.cells == b.cells; }

    /// Text table: alphabet rows ascending, length columns descending.
    std::string render() const {
        if (cells.empty()) return "(empty)\n";
        int amin = 1 << 30, amax = 0, lmin = 1 << 30, lmax = 0;
        for (const auto& [key, v] : cells) {
            amin = std::min(amin, key.first);
            amax = std::max(amax, key.first);
            lmin = std::min(lmin, key.second);
            lmax = std::max(lmax, key.second);
        }
        std::ostringstream out;
        out << "alph";
        for (int len = lmax; len >= lmin; --len) out << '\t' << len;
        out << "\ttotal\n";
        for (int a = amin; a <= amax; ++a) {
            uint64_t row = 0;
            for (int len = lmax; len >= lmin; --len) row += at(a, len);
            if (row == 0) continue;
            out << a;
            for (int len = lmax; len >= lmin; --len) {
                out << '\t';
                if (uint64_t v = at(a, len)) out << v;
            }
            out << '\t' << row << '\n';
        }
        out << "total";
        for (int len = lmax; len >= lmin; --len) out << '\t' << column_total(len);
        out << '\t' << total() << '\n';
        return out.str();
    }
};

/// Aggregate records into the table layout.
inline CountTable count(const std::vector<SearchRecord>& records) {
    CountTable t;
    for (const auto& r : records)
        t.add(r.dfa.alphabet(), r.subset_size ? r.subset_length : r.sync_length);
    return t;
}

}  // namespace slowsync
