#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "candidate_order.hpp"
#include "power.hpp"

namespace slowsync {

/// Classification of a synchronizing DFA.
///
/// minimal:      removing any symbol breaks synchronization.
/// semi_minimal: removing any symbol increases the length or breaks it.
/// maximal:      adding any absent non-identity symbol decreases the length.
struct ClassFlags {
    bool minimal = false;
    bool semi_minimal = false;
    bool maximal = false;
    /// Candidate symbol codes observed not to decrease the length (the
    /// witnesses against maximality); reusable by saturation passes.
    std::vector<uint64_t> tracked_nondecreasing_symbols;
};

namespace detail {

inline uint64_t symbol_space(int n) {
    uint64_t s = 1;
    for (int i = 0; i < n; ++i) s *= static_cast<uint64_t>(n);
    return s;
}

/// Shortest synchronizing word length of d extended by one extra symbol.
inline int sync_length_with(const SubsetOps& ops, const Transformation& extra) {
    const uint32_t count = ops.count;
    std::vector<uint32_t> extra_row(count);
    extra_row[0] = 0;
    for (uint32_t S = 1; S < count; ++S) {
        int q = std::countr_zero(S);
        extra_row[S] = extra_row[S & (S - 1)] | (1u << extra[q]);
    }
    std::vector<uint8_t> dist(count, kDistInf);
    std::vector<uint32_t> queue{count - 1};
    dist[count - 1] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
        uint32_t S = queue[head];
        if (std::popcount(S) == 1) return dist[S];
        uint8_t nd = static_cast<uint8_t>(dist[S] + 1);
        for (int x = 0; x <= ops.m; ++x) {
            uint32_t T = x < ops.m ? ops.apply(x, S) : extra_row[S];
            if (dist[T] == kDistInf) {
                dist[T] = nd;
                queue.push_back(T);
            }
        }
    }
    return -1;  // unreachable: d itself synchronizes, so some singleton is hit
}

}  // namespace detail

/// Classify a synchronizing DFA.  `known_decreasing` may carry symbol codes
/// already known to decrease the length for some subset of d; those are
/// skipped in the maximality scan (decreasing is monotone under extension).
inline ClassFlags classify(const Dfa& d, const std::vector<uint64_t>* known_decreasing = nullptr) {
    auto len = sync_length(d);
    if (!len) throw input_error("classify: automaton is not synchronizing");
    const int L = *len;
    const int n = d.size();

    ClassFlags flags;
    flags.minimal = true;
    flags.semi_minimal = true;
    for (int x = 0; x < d.alphabet(); ++x) {
        Dfa rem = d.without_symbol(x);
        auto rl = sync_length(rem);
        if (rl) {
            flags.minimal = false;
            if (*rl == L) {
                flags.semi_minimal = false;
                break;
            }
        }
    }
    if (!flags.semi_minimal) flags.minimal = false;

    SubsetOps ops = SubsetOps::build(d);
    flags.maximal = true;
    const uint64_t space = detail::symbol_space(n);
    size_t skip_pos = 0;
    for (uint64_t code = 0; code < space; ++code) {
        if (known_decreasing && skip_pos < known_decreasing->size() &&
            (*known_decreasing)[skip_pos] == code) {
            ++skip_pos;
            continue;
        }
        Transformation t = Transformation::from_code(n, code);
        if (t.is_identity() || d.has_symbol(t)) continue;
        if (detail::sync_length_with(ops, t) == L) {
            flags.maximal = false;
            flags.tracked_nondecreasing_symbols.push_back(code);
        }
    }
    return flags;
}

/// Add, in order_candidates order, every absent symbol whose addition keeps
/// the synchronization length unchanged.  The result is maximal, has the
/// same length, and contains the input.
inline Dfa saturate(const Dfa& d) {
    auto len = sync_length(d);
    if (!len) throw input_error("saturate: automaton is not synchronizing");
    const int L = *len;
    const int n = d.size();

    std::vector<Transformation> candidates;
    const uint64_t space = detail::symbol_space(n);
    for (uint64_t code = 0; code < space; ++code) {
        Transformation t = Transformation::from_code(n, code);
        if (t.is_identity() || d.has_symbol(t)) continue;
        candidates.push_back(t);
    }
    candidates = order_candidates(d, std::move(candidates));

    Dfa cur = d;
    SubsetOps ops = SubsetOps::build(cur);
    for (const Transformation& t : candidates) {
        if (detail::sync_length_with(ops, t) == L) {
            cur = cur.with_symbol(t);
            ops = SubsetOps::build(cur);
        }
    }
    return cur;
}

/// Every symbol that keeps the length when added to d (the closure within
/// which all maximal supersets of d live).
inline std::vector<Transformation> length_preserving_candidates(const Dfa& d, int L) {
    SubsetOps ops = SubsetOps::build(d);
    std::vector<Transformation> out;
    const uint64_t space = detail::symbol_space(d.size());
    for (uint64_t code = 0; code < space; ++code) {
        Transformation t = Transformation::from_code(d.size(), code);
        if (t.is_identity() || d.has_symbol(t)) continue;
        if (detail::sync_length_with(ops, t) == L) out.push_back(t);
    }
    return out;
}

/// Strip removable symbols (those whose removal keeps the length exactly)
/// until none remain; the result is semi-minimal with the same length.
inline Dfa strip_to_semi_minimal(const Dfa& d) {
    auto len = sync_length(d);
    if (!len) throw input_error("strip_to_semi_minimal: automaton is not synchronizing");
    const int L = *len;
    Dfa cur = d;
    bool stripped = true;
    while (stripped) {
        stripped = false;
        for (int x = 0; x < cur.alphabet(); ++x) {
            Dfa rem = cur.without_symbol(x);
            auto rl = sync_length(rem);
            if (rl && *rl == L) {
                cur = rem;
                stripped = true;
                break;
            }
        }
    }
    return cur;
}

}  // namespace slowsync
