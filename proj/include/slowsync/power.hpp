#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dfa.hpp"
#include "state_set.hpp"

namespace slowsync {

inline constexpr uint8_t kDistInf = 255;

/// Per-symbol subset image tables for one DFA: apply(x, S) in one lookup.
struct SubsetOps {
    int n = 0;
    int m = 0;
    uint32_t count = 0;  // 1 << n
    std::vector<uint32_t> act;

    static SubsetOps build(const Dfa& d) {
        SubsetOps t;
        t.n = d.size();
        t.m = d.alphabet();
        t.count = 1u << t.n;
        t.act.assign(static_cast<size_t>(t.m) * t.count, 0);
        for (int x = 0; x < t.m; ++x) {
            const Transformation& f = d.symbol(x);
            uint32_t* row = t.act.data() + static_cast<size_t>(x) * t.count;
            row[0] = 0;
            for (uint32_t S = 1; S < t.count; ++S) {
                int q = std::countr_zero(S);
                row[S] = row[S & (S - 1)] | (1u << f[q]);
            }
        }
        return t;
    }

    uint32_t apply(int x, uint32_t S) const {
        return act[static_cast<size_t>(x) * count + S];
    }
};

namespace detail {

/// Forward BFS over the power automaton from one source subset.
inline void subset_bfs(const SubsetOps& ops, uint32_t from, std::span<uint8_t> dist,
                       std::vector<uint32_t>& queue) {
    std::fill(dist.begin(), dist.end(), kDistInf);
    queue.clear();
    queue.push_back(from);
    dist[from] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
        uint32_t S = queue[head];
        uint8_t nd = static_cast<uint8_t>(dist[S] + 1);
        for (int x = 0; x < ops.m; ++x) {
            uint32_t T = ops.apply(x, S);
            if (dist[T] == kDistInf) {
                dist[T] = nd;
                queue.push_back(T);
            }
        }
    }
}

}  // namespace detail

/// S . word, applying symbols left to right.
inline StateSet apply(StateSet set, std::span<const int> word, const Dfa& d) {
    uint32_t S = set.bits;
    for (int x : word) {
        if (x < 0 || x >= d.alphabet()) throw input_error("apply: symbol index out of range");
        const Transformation& f = d.symbol(x);
        uint32_t T = 0;
        for (uint32_t b = S; b;) {
            int q = std::countr_zero(b);
            b &= b - 1;
            T |= 1u << f[q];
        }
        S = T;
    }
    return StateSet(S);
}

/// True iff some word sends the full state set to a singleton.  Uses the
/// pair-collapsing criterion: every pair of states can reach a merge.
inline bool is_synchronizing(const Dfa& d) {
    const int n = d.size();
    const int m = d.alphabet();
    if (m == 0) return n < 2;
    // mergeable[p] for pairs indexed a*n+b (a<b); fixpoint iteration
    std::vector<uint8_t> mergeable(static_cast<size_t>(n) * n, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (mergeable[a * n + b]) continue;
                for (int x = 0; x < m; ++x) {
                    const Transformation& f = d.symbol(x);
                    int u = f[a], v = f[b];
                    if (u == v || mergeable[std::min(u, v) * n + std::max(u, v)]) {
                        mergeable[a * n + b] = 1;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!mergeable[a * n + b]) return false;
    return true;
}

/// Exact shortest synchronizing word length, or absent when none exists.
inline std::optional<int> sync_length(const Dfa& d) {
    SubsetOps ops = SubsetOps::build(d);
    std::vector<uint8_t> dist(ops.count);
    std::vector<uint32_t> queue;
    detail::subset_bfs(ops, ops.count - 1, dist, queue);
    int best = -1;
    for (int q = 0; q < d.size(); ++q) {
        uint8_t v = dist[1u << q];
        if (v != kDistInf && (best < 0 || v < best)) best = v;
    }
    if (best < 0) return std::nullopt;
    return best;
}

/// One shortest synchronizing word; ties broken lexicographically least by
/// symbol index (BFS visits symbols in increasing order).
inline std::optional<std::vector<int>> shortest_sync_word(const Dfa& d) {
    SubsetOps ops = SubsetOps::build(d);
    const uint32_t full = ops.count - 1;
    if (d.size() == 1) return std::vector<int>{};
    std::vector<int32_t> parent(ops.count, -2);  // -2 unvisited, else parent set
    std::vector<int8_t> via(ops.count, -1);
    std::vector<uint32_t> queue{full};
    parent[full] = -1;
    for (size_t head = 0; head < queue.size(); ++head) {
        uint32_t S = queue[head];
        for (int x = 0; x < ops.m; ++x) {
            uint32_t T = ops.apply(x, S);
            if (parent[T] != -2) continue;
            parent[T] = static_cast<int32_t>(S);
            via[T] = static_cast<int8_t>(x);
            if (std::popcount(T) == 1) {
                std::vector<int> word;
                for (uint32_t C = T; C != full; C = static_cast<uint32_t>(parent[C]))
                    word.push_back(via[C]);
                std::reverse(word.begin(), word.end());
                return word;
            }
            queue.push_back(T);
        }
    }
    return std::nullopt;
}

/// Shortest word collapsing the given subset to a singleton; 0 for singletons.
inline std::optional<int> subset_sync_length(const Dfa& d, StateSet S) {
    if (S.empty()) throw input_error("subset_sync_length: empty subset");
    if (S.size() == 1) return 0;
    SubsetOps ops = SubsetOps::build(d);
    std::vector<uint8_t> dist(ops.count);
    std::vector<uint32_t> queue;
    detail::subset_bfs(ops, S.bits, dist, queue);
    int best = -1;
    for (int q = 0; q < d.size(); ++q) {
        uint8_t v = dist[1u << q];
        if (v != kDistInf && (best < 0 || v < best)) best = v;
    }
    if (best < 0) return std::nullopt;
    return best;
}

/// dist[S] = shortest collapse length for every subset at once (255 = never).
inline std::vector<uint8_t> collapse_distances(const Dfa& d) {
    SubsetOps ops = SubsetOps::build(d);
    std::vector<uint8_t> dist(ops.count, kDistInf);
    dist[0] = 0;
    for (int q = 0; q < d.size(); ++q) dist[1u << q] = 0;
    // relaxation rounds: dist[S] = 1 + min_x dist[S x]
    bool changed = true;
    while (changed) {
        changed = false;
        for (uint32_t S = 1; S < ops.count; ++S) {
            if (std::popcount(S) < 2) continue;
            int best = kDistInf;
            for (int x = 0; x < ops.m; ++x) {
                uint8_t v = dist[ops.apply(x, S)];
                if (v < best) best = v;
            }
            if (best + 1 < dist[S]) {
                dist[S] = static_cast<uint8_t>(best + 1);
                changed = true;
            }
        }
    }
    return dist;
}

/// Reachability data of one subset R in the power automaton.
struct ReductionData {
    bool reducible = false;
    std::optional<int> l_R;            // shortest reduction word length
    int sizeS_R = 0;                   // size of the smallest reachable set
    int m_R = 0;                       // min distance to a set of that size
    int M_R = 0;                       // max distance to a reachable set of that size
    std::vector<StateSet> reachable_min_sets;
};

inline ReductionData reduction_data(const Dfa& d, StateSet R) {
    if (R.size() < 2) throw input_error("reduction_data: subset must have at least 2 states");
    SubsetOps ops = SubsetOps::build(d);
    std::vector<uint8_t> dist(ops.count);
    std::vector<uint32_t> queue;
    detail::subset_bfs(ops, R.bits, dist, queue);

    ReductionData out;
    int k = R.size();
    int smin = k;
    for (uint32_t S : queue) smin = std::min(smin, std::popcount(S));
    out.sizeS_R = smin;
    out.reducible = smin < k;
    int l = -1, mr = -1, Mr = -1;
    for (uint32_t S : queue) {
        int sz = std::popcount(S);
        if (sz < k && (l < 0 || dist[S] < l)) l = dist[S];
        if (sz == smin) {
            if (mr < 0 || dist[S] < mr) mr = dist[S];
            if (dist[S] > Mr) Mr = dist[S];
            out.reachable_min_sets.push_back(StateSet(S));
        }
    }
    if (out.reducible) out.l_R = l;
    out.m_R = mr;
    out.M_R = Mr;
    return out;
}

/// Strongly connected components of the irreducible k-subsets, their
/// directed diameters, and the step estimate m_k derived from them.
struct SccDecomposition {
    int k = 0;
    std::vector<std::vector<StateSet>> components;
    std::vector<int> diameters;
    std::vector<int> improved_diameters;
    int m_k = 0;           // #components + sum of diameters
    int improved_m_k = 0;  // same with pair-refined diameters
};

/// Strong connectivity of the state digraph with all symbol edges.
inline bool is_transitive(const Dfa& d) {
    const int n = d.size();
    const int m = d.alphabet();
    // reachability closure from each state
    for (int s = 0; s < n; ++s) {
        uint32_t seen = 1u << s;
        uint32_t frontier = seen;
        while (frontier) {
            int q = std::countr_zero(frontier);
            frontier &= frontier - 1;
            for (int x = 0; x < m; ++x) {
                uint32_t b = 1u << d.symbol(x)[q];
                if (!(seen & b)) {
                    seen |= b;
                    frontier |= b;
                }
            }
        }
        if (seen != (1u << n) - 1) return false;
    }
    return true;
}

}  // namespace slowsync
