#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "power_analysis.hpp"

namespace slowsync {

/// A collection of equal-size subsets together with a pool of candidate
/// pairs.  Sequences (S_1,P_1),...,(S_l,P_l) with P_i inside S_i and no
/// earlier pair inside a later subset are scored by their length.
struct FranklPinInstance {
    int n = 0;
    std::vector<uint32_t> sigma;  // k-subset masks, k >= 2
    std::vector<uint32_t> pi;     // pair masks

    FranklPinInstance() = default;
    FranklPinInstance(int n_states, std::vector<uint32_t> sets, std::vector<uint32_t> pairs)
        : n(n_states), sigma(std::move(sets)), pi(std::move(pairs)) {
        std::sort(sigma.begin(), sigma.end());
        sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
        std::sort(pi.begin(), pi.end());
        pi.erase(std::unique(pi.begin(), pi.end()), pi.end());
        if (!sigma.empty()) {
            int k = std::popcount(sigma[0]);
            if (k < 2) throw input_error("frankl-pin: subsets must have size at least 2");
            for (uint32_t S : sigma)
                if (std::popcount(S) != k) throw input_error("frankl-pin: subsets of unequal size");
        }
        for (uint32_t P : pi)
            if (std::popcount(P) != 2) throw input_error("frankl-pin: pairs must have size 2");
    }

    /// All pairs of an n-state set as the pair pool.
    static std::vector<uint32_t> all_pairs(int n) {
        std::vector<uint32_t> ps;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) ps.push_back((1u << a) | (1u << b));
        return ps;
    }
};

namespace detail {

// lexicographic pair order by (min element, max element)
inline bool pair_lex_less(uint32_t p, uint32_t q) {
    int pa = std::countr_zero(p), qa = std::countr_zero(q);
    if (pa != qa) return pa < qa;
    return (p ^ (1u << pa)) < (q ^ (1u << qa));
}

}  // namespace detail

/// Greedy lower bound on the longest Frankl-Pin sequence: repeatedly pick
/// the pair contained in the fewest remaining subsets (lexicographically
/// least on ties), drop every subset containing it, and count the picks
/// that removed anything.
inline int frankl_pin_greedy(const FranklPinInstance& inst) {
    std::vector<uint32_t> sigma = inst.sigma;
    std::vector<uint32_t> pi = inst.pi;
    std::sort(pi.begin(), pi.end(), detail::pair_lex_less);
    int len = 0;
    while (!sigma.empty() && !pi.empty()) {
        size_t best = 0;
        int best_count = INT_MAX;
        for (size_t i = 0; i < pi.size(); ++i) {
            int count = 0;
            for (uint32_t S : sigma)
                if ((S & pi[i]) == pi[i]) ++count;
            if (count < best_count) {
                best_count = count;
                best = i;
            }
        }
        uint32_t P = pi[best];
        pi.erase(pi.begin() + best);
        if (best_count == 0) continue;
        std::erase_if(sigma, [P](uint32_t S) { return (S & P) == P; });
        ++len;
    }
    return len;
}

/// Exact longest Frankl-Pin sequence by memoized search over subsets of
/// sigma.  Guarded to |sigma| <= 12.
inline int frankl_pin_exact(const FranklPinInstance& inst) {
    if (inst.sigma.size() > 12) throw capacity_error("frankl_pin_exact: instance too large");
    const int ns = static_cast<int>(inst.sigma.size());
    if (ns == 0) return 0;
    std::vector<int> memo(size_t(1) << ns, -1);

    // containers[p] = bitmask over sigma of subsets containing pair p
    std::vector<uint32_t> containers(inst.pi.size(), 0);
    for (size_t p = 0; p < inst.pi.size(); ++p)
        for (int i = 0; i < ns; ++i)
            if ((inst.sigma[i] & inst.pi[p]) == inst.pi[p]) containers[p] |= 1u << i;

    auto rec = [&](auto&& self, uint32_t live) -> int {
        if (live == 0) return 0;
        int& slot = memo[live];
        if (slot >= 0) return slot;
        int best = 0;
        for (size_t p = 0; p < inst.pi.size(); ++p) {
            uint32_t hit = containers[p] & live;
            if (!hit) continue;
            best = std::max(best, 1 + self(self, live & ~containers[p]));
        }
        return slot = best;
    };
    return rec(rec, (ns == 32 ? ~0u : (1u << ns) - 1));
}

/// All quantities behind the three pruning bounds on the synchronization
/// length of any synchronizing extension, plain and improved.
struct BoundsReport {
    int n = 0;
    int sizeS = 0;  // size of the smallest set reachable from Q
    int m = 0;      // min distance from Q to a set of that size
    int M = 0;      // max distance from Q to a reachable set of that size
    int c = 0;      // components + diameters over reachable sets of that size
    int improved_M = 0;
    int improved_c = 0;
    std::vector<int> m_k;           // per level k (index 0..n, defined for 2..n)
    std::vector<int> l_k;           // per level k
    std::vector<int> improved_m_k;  // pair+greedy-sequence improvements, clamped at 0
    int L = 0, Lp = 0, Lpp = 0;
    int L_improved = 0, Lp_improved = 0, Lpp_improved = 0;
};

struct BoundsOptions {
    bool pair_improvements = true;
    bool fp_improvements = true;
};

namespace detail {

inline int binom2(int v) { return v * (v - 1) / 2; }

/// Shared evaluator over a PowerAnalysis; computes plain and improved
/// variants of all three bounds and the per-level recursion values.
class BoundsComputer {
public:
    BoundsComputer(const PowerAnalysis& pa, BoundsOptions opt = {}) : pa_(pa), opt_(opt) {
        const int n = pa_.states();
        m_k_.assign(n + 1, 0);
        l_k_.assign(n + 1, 0);
        pair_m_k_.assign(n + 1, 0);
        full_m_k_.assign(n + 1, 0);
        fpb_k_.assign(n + 1, INT_MAX);
        for (int k = 2; k <= pa_.max_level(); ++k) {
            const auto& L = pa_.level(k);
            m_k_[k] = L.m_k;
            l_k_[k] = L.l_k;
            pair_m_k_[k] = opt_.pair_improvements ? L.improved_m_k : L.m_k;
            int v = pair_m_k_[k];
            if (opt_.fp_improvements) {
                fpb_k_[k] = binom2(n - k + 2) - fp_level(k);
                v = std::min(v, fpb_k_[k]);
            }
            full_m_k_[k] = std::max(0, v);
        }
        size_S_ = pa_.size_min(pa_.full_set());
    }

    int size_S() const { return size_S_; }
    int m_of_Q() const { return pa_.min_dist_to_min(pa_.full_set()); }
    int M_of_Q() const { return pa_.max_dist_to_min(pa_.full_set()); }
    int c_of_Q() { return comp_sum(pa_.full_set()).plain; }
    int improved_c_of_Q() { return comp_sum(pa_.full_set()).pair; }
    int improved_M_of_Q() {
        return opt_.pair_improvements ? improved_M(pa_.full_set()) : M_of_Q();
    }
    int m_k(int k) const { return m_k_[k]; }
    int l_k(int k) const { return l_k_[k]; }
    int full_m_k(int k) const { return full_m_k_[k]; }

    int L_plain() {
        if (size_S_ == 1) return m_of_Q();
        int sum = m_of_Q();
        for (int k = 2; k <= size_S_; ++k) sum += m_k_[k] + l_k_[k];
        return sum;
    }

    int L_improved() {
        if (size_S_ == 1) return m_of_Q();
        int sum = m_of_Q();
        for (int k = 2; k <= size_S_; ++k) sum += full_m_k_[k] + l_k_[k];
        return sum;
    }

    int Lp_plain() {
        if (size_S_ == 1) return m_of_Q();
        int sum = 0;
        for (int k = 2; k <= size_S_; ++k) sum += m_k_[k] + l_k_[k];
        return sum - c_of_Q() + 1 + M_of_Q();
    }

    int Lp_improved() {
        if (size_S_ == 1) return m_of_Q();
        int sum = 0;
        for (int k = 2; k < size_S_; ++k) sum += full_m_k_[k] + l_k_[k];
        sum += l_k_[size_S_];
        return sum + joint_unit(pa_.full_set()) + 1 + improved_M_of_Q();
    }

    /// L''_Q, or the per-level value L''_k when level >= 0 is given.
    int Lpp(bool improved, int level = -1) {
        const int n = pa_.states();
        if (level < 0 && pa_.max_level() < n)
            throw input_error("bounds: full recursion needs an uncapped analysis");
        std::vector<int>& lk = improved ? iLpp_k_ : pLpp_k_;
        if (lk.empty()) {
            lk.assign(n + 1, 0);
            for (int k = 2; k <= std::min(n, pa_.max_level()); ++k) {
                int best = lk[k - 1];
                for (uint32_t R : pa_.level(k).reducible_sets)
                    best = std::max(best, Lpp_R(R, improved, lk));
                lk[k] = used_m_k(k, improved) + best;
            }
        }
        if (level >= 0) return lk[level];
        uint32_t Q = pa_.full_set();
        if (pa_.reducible(Q)) return Lpp_R(Q, improved, lk);
        // Q irreducible: no reduction word exists, keep only the reach-and-descend term
        int k = size_S_;  // == n
        int maxpart = lk[k] - used_m_k(k, improved);
        if (improved) return maxpart + joint_unit(Q) + 1 + improved_M(Q);
        return lk[k] - comp_sum(Q).plain + 1 + pa_.max_dist_to_min(Q);
    }

private:
    struct CompSum {
        int plain = 0;
        int pair = 0;
    };

    int used_m_k(int k, bool improved) const {
        if (!improved) return m_k_[k];
        return k < size_S_ ? full_m_k_[k] : m_k_[k];
    }

    int Lpp_R(uint32_t R, bool improved, const std::vector<int>& lk) {
        const int kR = pa_.size_min(R);
        if (kR == 1) return pa_.min_dist_to_min(R);
        const int k_of_R = std::popcount(R);
        int descend;
        if (improved) {
            int maxpart = lk[kR] - used_m_k(kR, improved);
            descend = maxpart + joint_unit(R) + 1 + improved_M(R);
        } else {
            descend = lk[kR] - comp_sum(R).plain + 1 + pa_.max_dist_to_min(R);
        }
        int reduce = lk[k_of_R - 1] + pa_.reduction_length(R);
        return std::min(descend, reduce);
    }

    /// min{ m_k - c_R (pair-refined), -fp(tau_R) + binom - fp(rho_k, rho_2) },
    /// clamped at 0, with k = |S_R|.
    int joint_unit(uint32_t R) {
        const int kR = pa_.size_min(R);
        CompSum cs = comp_sum(R);
        int v = (opt_.pair_improvements ? pair_m_k_[kR] - cs.pair : m_k_[kR] - cs.plain);
        if (opt_.fp_improvements && fpb_k_[kR] != INT_MAX)
            v = std::min(v, -fp_tau(R) + fpb_k_[kR]);
        return std::max(0, v);
    }

    /// Components + diameters over the SCCs reachable from R at level |S_R|.
    CompSum comp_sum(uint32_t R) {
        auto it = comp_sum_cache_.find(R);
        if (it != comp_sum_cache_.end()) return it->second;
        const int kR = pa_.size_min(R);
        const auto& L = pa_.level(kR);
        const uint8_t* row = pa_.dist_row(R);
        std::vector<uint8_t> seen(L.components.size(), 0);
        CompSum cs;
        for (uint32_t S : L.irreducible_sets) {
            if (row[S] == kDistInf) continue;
            int comp = pa_.component_of(S);
            if (seen[comp]) continue;
            seen[comp] = 1;
            cs.plain += 1 + L.diameter[comp];
            cs.pair += 1 + L.improved_diameter[comp];
        }
        comp_sum_cache_.emplace(R, cs);
        return cs;
    }

    /// Pair-refined M_R: max over pairs inside some reachable minimal-size
    /// set of the shortest distance from R to any superset of the pair.
    int improved_M(uint32_t R) {
        const int kR = pa_.size_min(R);
        const uint8_t* row = pa_.dist_row(R);
        const int np = pa_.pair_count();
        std::vector<uint8_t> pair_seen(np, 0);
        const uint32_t count = pa_.subset_count();
        for (uint32_t S = 1; S < count; ++S) {
            if (row[S] == kDistInf || std::popcount(S) != kR) continue;
            for (uint32_t b1 = S; b1;) {
                int a = std::countr_zero(b1);
                b1 &= b1 - 1;
                for (uint32_t b2 = b1; b2;) {
                    int b = std::countr_zero(b2);
                    b2 &= b2 - 1;
                    pair_seen[pa_.pair_index(a, b)] = 1;
                }
            }
        }
        int best = 0;
        for (int p = 0; p < np; ++p)
            if (pair_seen[p]) best = std::max(best, static_cast<int>(pa_.min_dist_to_superset(R, p)));
        return best;
    }

    /// Greedy sequence length over the reducible k-sets with reducible pairs.
    int fp_level(int k) {
        if (fp_level_cache_.empty()) fp_level_cache_.assign(pa_.states() + 1, -1);
        if (fp_level_cache_[k] >= 0) return fp_level_cache_[k];
        std::vector<uint32_t> rho_k = pa_.level(k).reducible_sets;
        std::vector<uint32_t> rho_2 =
            pa_.max_level() >= 2 ? pa_.level(2).reducible_sets : std::vector<uint32_t>{};
        int v;
        if (k == 2) {
            v = static_cast<int>(rho_2.size());  // distinct pairs never contain each other
        } else {
            v = frankl_pin_greedy(FranklPinInstance(pa_.states(), std::move(rho_k), std::move(rho_2)));
        }
        return fp_level_cache_[k] = v;
    }

    /// Greedy sequence length over the reachable minimal-size sets of R,
    /// with every pair available.
    int fp_tau(uint32_t R) {
        const int kR = pa_.size_min(R);
        const uint8_t* row = pa_.dist_row(R);
        std::vector<uint32_t> tau;
        const uint32_t count = pa_.subset_count();
        for (uint32_t S = 1; S < count; ++S)
            if (row[S] != kDistInf && std::popcount(S) == kR) tau.push_back(S);
        if (kR < 2) return 0;
        return frankl_pin_greedy(
            FranklPinInstance(pa_.states(), std::move(tau), FranklPinInstance::all_pairs(pa_.states())));
    }

    const PowerAnalysis& pa_;
    BoundsOptions opt_;
    int size_S_ = 0;
    std::vector<int> m_k_, l_k_, pair_m_k_, full_m_k_, fpb_k_;
    std::vector<int> pLpp_k_, iLpp_k_;
    std::vector<int> fp_level_cache_;
    std::unordered_map<uint32_t, CompSum> comp_sum_cache_;
};

}  // namespace detail

inline BoundsReport compute_bounds(const Dfa& d, BoundsOptions opt = {}) {
    PowerAnalysis pa(d);
    detail::BoundsComputer plain(pa, BoundsOptions{false, false});
    detail::BoundsComputer impr(pa, opt);
    BoundsReport r;
    r.n = d.size();
    r.sizeS = plain.size_S();
    r.m = plain.m_of_Q();
    r.M = plain.M_of_Q();
    r.c = plain.c_of_Q();
    r.improved_M = impr.improved_M_of_Q();
    r.improved_c = impr.improved_c_of_Q();
    r.m_k.assign(r.n + 1, 0);
    r.l_k.assign(r.n + 1, 0);
    r.improved_m_k.assign(r.n + 1, 0);
    for (int k = 2; k <= r.n; ++k) {
        r.m_k[k] = plain.m_k(k);
        r.l_k[k] = plain.l_k(k);
        r.improved_m_k[k] = impr.full_m_k(k);
    }
    r.L = plain.L_plain();
    r.Lp = plain.Lp_plain();
    r.Lpp = plain.Lpp(false);
    r.L_improved = impr.L_improved();
    r.Lp_improved = impr.Lp_improved();
    r.Lpp_improved = impr.Lpp(true);
    return r;
}

/// Upper bound L on the synchronization length of any synchronizing
/// extension: sum of (m_k + l_k) over levels plus the descent from Q.
inline int bound_L(const Dfa& d) {
    PowerAnalysis pa(d);
    return detail::BoundsComputer(pa, BoundsOptions{false, false}).L_plain();
}

/// Second variant: trades the minimal descent m for the maximal descent M
/// minus the reachable component count c at the bottom level.
inline int bound_Lp(const Dfa& d) {
    PowerAnalysis pa(d);
    return detail::BoundsComputer(pa, BoundsOptions{false, false}).Lp_plain();
}

/// Third variant: the per-subset recursion L''_Q.
inline int bound_Lpp(const Dfa& d) {
    PowerAnalysis pa(d);
    return detail::BoundsComputer(pa, BoundsOptions{false, false}).Lpp(false);
}

/// Pair-refined diameter of one SCC of irreducible k-sets (the quantity
/// substituted for the plain diameter inside m_k, c_R and M_R).
inline int improved_component_diameter(const Dfa& d, const std::vector<StateSet>& component) {
    if (component.empty()) throw input_error("improved_component_diameter: empty component");
    int k = component[0].size();
    PowerAnalysis pa(d, k);
    const auto& L = pa.level(k);
    int comp = pa.component_of(component[0].bits);
    if (comp < 0) throw input_error("improved_component_diameter: not an irreducible set");
    std::vector<uint32_t> want;
    for (StateSet s : component) want.push_back(s.bits);
    std::sort(want.begin(), want.end());
    if (want != L.components[comp])
        throw input_error("improved_component_diameter: not a strongly connected component");
    return L.improved_diameter[comp];
}

/// Recompute the improved bounds with the greedy-sequence refinements
/// applied on top of the pair refinements already present in `base`.
inline BoundsReport fpks_improvements(const Dfa& d, const BoundsReport& base) {
    BoundsReport r = compute_bounds(d, BoundsOptions{true, true});
    r.L = base.L;
    r.Lp = base.Lp;
    r.Lpp = base.Lpp;
    return r;
}

}  // namespace slowsync
