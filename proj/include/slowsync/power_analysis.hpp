#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "power.hpp"

namespace slowsync {

/// Everything the pruning bounds need about one DFA's power automaton:
/// pairwise subset distances, per-subset reduction summaries, and the SCC
/// decomposition of the irreducible k-subsets for every level k.
///
/// Memory is Theta(4^n), so construction is guarded to n <= 12.
class PowerAnalysis {
public:
    // max_level limits the per-level work to |R| <= max_level (the
    // reachability matrix is always complete).  Use n for everything.
    explicit PowerAnalysis(const Dfa& d, int max_level = -1)
        : n_(d.size()), m_(d.alphabet()), count_(1u << d.size()), ops_(SubsetOps::build(d)) {
        if (n_ > 12) throw capacity_error("power analysis: state count too large");
        max_level_ = max_level < 0 ? n_ : max_level;

        dist_.assign(static_cast<size_t>(count_) * count_, kDistInf);
        std::vector<uint32_t> queue;
        queue.reserve(count_);
        for (uint32_t R = 1; R < count_; ++R) {
            std::span<uint8_t> row(dist_.data() + static_cast<size_t>(R) * count_, count_);
            detail::subset_bfs(ops_, R, row, queue);
        }

        size_min_.assign(count_, 0);
        m_R_.assign(count_, 0);
        M_R_.assign(count_, 0);
        l_R_.assign(count_, kDistInf);
        for (uint32_t R = 1; R < count_; ++R) {
            const uint8_t* row = dist_row(R);
            int smin = n_ + 1, l = kDistInf, mr = kDistInf, Mr = 0;
            for (uint32_t S = 1; S < count_; ++S) {
                if (row[S] == kDistInf) continue;
                int sz = std::popcount(S);
                if (sz < smin) smin = sz;
            }
            int k = std::popcount(R);
            for (uint32_t S = 1; S < count_; ++S) {
                if (row[S] == kDistInf) continue;
                int sz = std::popcount(S);
                if (sz < k && row[S] < l) l = row[S];
                if (sz == smin) {
                    if (row[S] < mr) mr = row[S];
                    if (row[S] > Mr) Mr = row[S];
                }
            }
            size_min_[R] = static_cast<uint8_t>(smin);
            m_R_[R] = static_cast<uint8_t>(mr);
            M_R_[R] = static_cast<uint8_t>(Mr);
            l_R_[R] = static_cast<uint8_t>(l);
        }

        build_pair_tables();
        build_levels();
    }

    int states() const { return n_; }
    int alphabet() const { return m_; }
    uint32_t subset_count() const { return count_; }
    const SubsetOps& ops() const { return ops_; }
    uint32_t full_set() const { return count_ - 1; }

    const uint8_t* dist_row(uint32_t R) const {
        return dist_.data() + static_cast<size_t>(R) * count_;
    }
    uint8_t dist(uint32_t R, uint32_t S) const { return dist_row(R)[S]; }

    bool irreducible(uint32_t R) const { return size_min_[R] == std::popcount(R); }
    int size_min(uint32_t R) const { return size_min_[R]; }
    int min_dist_to_min(uint32_t R) const { return m_R_[R]; }
    int max_dist_to_min(uint32_t R) const { return M_R_[R]; }
    bool reducible(uint32_t R) const { return !irreducible(R); }
    int reduction_length(uint32_t R) const { return l_R_[R]; }  // kDistInf if irreducible

    int pair_count() const { return n_ * (n_ - 1) / 2; }
    int pair_index(int a, int b) const { return pair_idx_[a * n_ + b]; }

    /// min over reachable T containing pair p of dist(R, T); kDistInf if none.
    uint8_t min_dist_to_superset(uint32_t R, int pair) const {
        return min_sup_[static_cast<size_t>(R) * pair_count() + pair];
    }

    struct Level {
        std::vector<uint32_t> irreducible_sets;           // masks, ascending
        std::vector<int> comp_of;                         // per irreducible set (same order)
        std::vector<std::vector<uint32_t>> components;    // masks per SCC
        std::vector<int> diameter;                        // per SCC
        std::vector<int> improved_diameter;               // pair-refined, per SCC
        std::vector<uint32_t> reducible_sets;             // masks of reducible k-sets
        int m_k = 0;
        int improved_m_k = 0;
        int l_k = 0;  // max reduction length over reducible k-sets, 0 if none
    };

    const Level& level(int k) const { return levels_[k]; }
    int max_level() const { return max_level_; }

    /// SCC id of an irreducible set at its own level, -1 otherwise.
    int component_of(uint32_t R) const { return comp_id_[R]; }
    int component_diameter(int k, int comp) const { return levels_[k].diameter[comp]; }

private:
    void build_pair_tables() {
        pair_idx_.assign(static_cast<size_t>(n_) * n_, -1);
        int np = 0;
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b) pair_idx_[a * n_ + b] = np++;
        pair_masks_.resize(np);
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                pair_masks_[pair_idx_[a * n_ + b]] = (1u << a) | (1u << b);

        // pairs contained in each subset, as index lists
        pairs_in_.resize(count_);
        for (uint32_t S = 0; S < count_; ++S) {
            for (uint32_t b1 = S; b1;) {
                int a = std::countr_zero(b1);
                b1 &= b1 - 1;
                for (uint32_t b2 = b1; b2;) {
                    int b = std::countr_zero(b2);
                    b2 &= b2 - 1;
                    pairs_in_[S].push_back(static_cast<uint16_t>(pair_idx_[a * n_ + b]));
                }
            }
        }

        min_sup_.assign(static_cast<size_t>(count_) * np, kDistInf);
        for (uint32_t R = 1; R < count_; ++R) {
            const uint8_t* row = dist_row(R);
            uint8_t* out = min_sup_.data() + static_cast<size_t>(R) * np;
            for (uint32_t T = 1; T < count_; ++T) {
                uint8_t dv = row[T];
                if (dv == kDistInf) continue;
                for (uint16_t p : pairs_in_[T])
                    if (dv < out[p]) out[p] = dv;
            }
        }
    }

    void build_levels() {
        levels_.assign(n_ + 1, Level{});
        comp_id_.assign(count_, -1);
        for (int k = 2; k <= std::min(n_, max_level_); ++k) build_level(k);
    }

    void build_level(int k) {
        Level& L = levels_[k];
        std::vector<int> index_of(count_, -1);
        for (uint32_t S = 1; S < count_; ++S) {
            if (std::popcount(S) != k) continue;
            if (irreducible(S)) {
                index_of[S] = static_cast<int>(L.irreducible_sets.size());
                L.irreducible_sets.push_back(S);
            } else {
                L.reducible_sets.push_back(S);
                L.l_k = std::max(L.l_k, static_cast<int>(l_R_[S]));
            }
        }
        const int nv = static_cast<int>(L.irreducible_sets.size());
        L.comp_of.assign(nv, -1);
        if (nv > 0) {
            // iterative Tarjan over the symbol-application digraph
            std::vector<int> low(nv, 0), num(nv, -1), stk, callstack, edge_pos(nv, 0);
            std::vector<uint8_t> onstk(nv, 0);
            int counter = 0;
            for (int root = 0; root < nv; ++root) {
                if (num[root] >= 0) continue;
                callstack.push_back(root);
                while (!callstack.empty()) {
                    int v = callstack.back();
                    if (num[v] < 0) {
                        num[v] = low[v] = counter++;
                        stk.push_back(v);
                        onstk[v] = 1;
                    }
                    bool descended = false;
                    while (edge_pos[v] < m_) {
                        int x = edge_pos[v]++;
                        uint32_t T = ops_.apply(x, L.irreducible_sets[v]);
                        int w = index_of[T];
                        if (w < 0) continue;  // image left this level (impossible) - skip
                        if (num[w] < 0) {
                            callstack.push_back(w);
                            descended = true;
                            break;
                        }
                        if (onstk[w]) low[v] = std::min(low[v], num[w]);
                    }
                    if (descended) continue;
                    callstack.pop_back();
                    if (!callstack.empty()) {
                        int parent = callstack.back();
                        low[parent] = std::min(low[parent], low[v]);
                    }
                    if (low[v] == num[v]) {
                        std::vector<uint32_t> comp;
                        int comp_idx = static_cast<int>(L.components.size());
                        while (true) {
                            int w = stk.back();
                            stk.pop_back();
                            onstk[w] = 0;
                            L.comp_of[w] = comp_idx;
                            comp.push_back(L.irreducible_sets[w]);
                            if (w == v) break;
                        }
                        std::sort(comp.begin(), comp.end());
                        L.components.push_back(std::move(comp));
                    }
                }
            }
        }
        for (int i = 0; i < nv; ++i) comp_id_[L.irreducible_sets[i]] = L.comp_of[i];

        // plain and pair-refined diameters per component
        const int np = pair_count();
        L.diameter.assign(L.components.size(), 0);
        L.improved_diameter.assign(L.components.size(), 0);
        for (size_t c = 0; c < L.components.size(); ++c) {
            const auto& comp = L.components[c];
            // pairs contained in some member
            std::vector<uint8_t> in_comp_pairs(np, 0);
            for (uint32_t S : comp)
                for (uint16_t p : pairs_in_[S]) in_comp_pairs[p] = 1;
            int diam = 0, idiam = 0;
            for (uint32_t S1 : comp) {
                const uint8_t* row = dist_row(S1);
                const uint8_t* sup = min_sup_.data() + static_cast<size_t>(S1) * np;
                for (uint32_t S2 : comp) diam = std::max(diam, static_cast<int>(row[S2]));
                for (int p = 0; p < np; ++p)
                    if (in_comp_pairs[p]) idiam = std::max(idiam, static_cast<int>(sup[p]));
            }
            L.diameter[c] = diam;
            L.improved_diameter[c] = idiam;
        }
        L.m_k = static_cast<int>(L.components.size());
        L.improved_m_k = L.m_k;
        for (size_t c = 0; c < L.components.size(); ++c) {
            L.m_k += L.diameter[c];
            L.improved_m_k += L.improved_diameter[c];
        }
    }

    int n_, m_;
    uint32_t count_;
    int max_level_ = 0;
    SubsetOps ops_;
    std::vector<uint8_t> dist_;
    std::vector<uint8_t> size_min_, m_R_, M_R_, l_R_;
    std::vector<int> pair_idx_;
    std::vector<uint32_t> pair_masks_;
    std::vector<std::vector<uint16_t>> pairs_in_;
    std::vector<uint8_t> min_sup_;
    std::vector<Level> levels_;
    std::vector<int> comp_id_;
};

/// SCCs of the directed graph on irreducible k-subsets, their diameters,
/// and m_k = #components + sum of diameters (plus the pair-refined value).
inline SccDecomposition irreducible_scc(const Dfa& d, int k) {
    if (k < 2 || k > d.size()) throw input_error("irreducible_scc: level out of range");
    PowerAnalysis pa(d, k);
    const auto& L = pa.level(k);
    SccDecomposition out;
    out.k = k;
    for (const auto& comp : L.components) {
        std::vector<StateSet> sets;
        for (uint32_t S : comp) sets.push_back(StateSet(S));
        out.components.push_back(std::move(sets));
    }
    out.diameters = L.diameter;
    out.improved_diameters = L.improved_diameter;
    out.m_k = L.m_k;
    out.improved_m_k = L.improved_m_k;
    return out;
}

}  // namespace slowsync
