#pragma once

#include <numeric>
#include <vector>

#include "power.hpp"

namespace slowsync {

namespace detail {

inline Transformation cycle_map(int n) {
    std::vector<int> img(n);
    for (int q = 0; q < n; ++q) img[q] = (q + 1) % n;
    return Transformation(n, img);
}

inline Transformation merge_map(int n, int from, int to) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    img[from] = to;
    return Transformation(n, img);
}

inline Transformation swap_map(int n, int a, int b) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    std::swap(img[a], img[b]);
    return Transformation(n, img);
}

inline void require_length(const Dfa& d, int want, const char* family) {
    auto len = sync_length(d);
    if (!len || *len != want)
        throw std::logic_error(std::string(family) + ": constructed automaton has wrong length");
}

}  // namespace detail

/// The cycle-plus-one-merge family with synchronization length (n-1)^2.
inline Dfa cerny(int n) {
    if (n < 2) throw input_error("cerny: need at least 2 states");
    std::vector<int> b(n);
    std::iota(b.begin(), b.end(), 0);
    b[0] = 1;
    Dfa d(n, {detail::cycle_map(n), Transformation(n, b)});
    if (n <= 12) detail::require_length(d, (n - 1) * (n - 1), "cerny");
    return d;
}

/// Expected shortest synchronizing word of cerny(n) as symbol indices:
/// b (a^{n-1} b)^{n-2} under the stored symbol order.
inline std::vector<int> cerny_expected_word(int n) {
    Dfa d = cerny(n);
    int idx_a = d.symbol(0).is_permutation() ? 0 : 1;
    int idx_b = 1 - idx_a;
    std::vector<int> w{idx_b};
    for (int rep = 0; rep < n - 2; ++rep) {
        for (int i = 0; i < n - 1; ++i) w.push_back(idx_a);
        w.push_back(idx_b);
    }
    return w;
}

/// Chain of merges into a shaded pair that needs exactly n steps: n symbols,
/// synchronization length n, semi-minimal for n >= 4.
inline Dfa star_semi_minimal(int n) {
    if (n < 4) throw input_error("star_semi_minimal: need at least 4 states");
    const int T = n - 2, B = n - 1;
    std::vector<Transformation> syms;
    for (int i = 1; i <= n - 3; ++i) syms.push_back(detail::merge_map(n, i, i - 1));
    syms.push_back(detail::merge_map(n, T, n - 3));  // c
    {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        for (int q = 0; q <= n - 3; ++q) img[q] = T;  // d: collect whites into T
        syms.push_back(Transformation(n, img));
    }
    {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        for (int q = 1; q <= n - 3; ++q) img[q] = B;  // e: collect into B, swap T/B
        img[T] = B;
        img[B] = T;
        syms.push_back(Transformation(n, img));
    }
    Dfa d(n, std::move(syms));
    detail::require_length(d, n, "star_semi_minimal");
    return d;
}

/// The 3-state analog of star_semi_minimal (not semi-minimal; kept for tests).
inline Dfa star_three_state_variant() {
    std::vector<Transformation> syms;
    syms.push_back(detail::merge_map(3, 1, 0));            // c: T -> white
    syms.push_back(Transformation(3, {1, 1, 2}));          // d: white -> T
    syms.push_back(Transformation(3, {0, 2, 1}));          // e: swap T/B
    return Dfa(3, std::move(syms));
}

/// Maximal DFA with 3(n-1)! - 1 symbols and synchronization length 3n-5:
/// all permutations fixing q, all permutations sending q to q', and all
/// maps onto Q minus q merging q with q'.
inline Dfa maximum_3n5(int n) {
    if (n < 3 || n > 6) throw input_error("maximum_3n5: supported for 3..6 states");
    std::vector<Transformation> syms;
    std::vector<int> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 1);  // states 1..n-1

    // (i) permutations with 0 fixed, minus the identity
    std::vector<int> perm = rest;
    do {
        std::vector<int> img(n);
        img[0] = 0;
        for (int i = 0; i < n - 1; ++i) img[1 + i] = perm[i];
        Transformation t(n, img);
        if (!t.is_identity()) syms.push_back(t);
    } while (std::next_permutation(perm.begin(), perm.end()));

    // (ii) permutations sending 0 to 1; the rest biject onto {0,2,3,...}
    std::vector<int> others;
    others.push_back(0);
    for (int q = 2; q < n; ++q) others.push_back(q);
    perm = others;
    std::sort(perm.begin(), perm.end());
    do {
        std::vector<int> img(n);
        img[0] = 1;
        for (int i = 0; i < n - 1; ++i) img[1 + i] = perm[i];
        syms.push_back(Transformation(n, img));
    } while (std::next_permutation(perm.begin(), perm.end()));

    // (iii) maps onto Q \ {0} with 0 and 1 merged: assign the n-1 targets
    // 1..n-1 bijectively to the classes {0,1},{2},...,{n-1}
    perm = rest;
    std::sort(perm.begin(), perm.end());
    do {
        std::vector<int> img(n);
        img[0] = img[1] = perm[0];
        for (int i = 1; i < n - 1; ++i) img[1 + i] = perm[i];
        syms.push_back(Transformation(n, img));
    } while (std::next_permutation(perm.begin(), perm.end()));

    Dfa d(n, std::move(syms));
    int fact = 1;
    for (int i = 2; i < n; ++i) fact *= i;
    if (d.alphabet() != 3 * fact - 1)
        throw std::logic_error("maximum_3n5: wrong alphabet size");
    detail::require_length(d, 3 * n - 5, "maximum_3n5");
    return d;
}

/// Minimal DFA with n symbols and any requested synchronization length in
/// [n+1, n(n+1)/2 - 2].  A chain of interchanges with one merge at the left
/// end; detaching the trailing states one position at a time lowers the
/// length by one per step, and turning their attachments into merges covers
/// the bottom of the range.
inline Dfa merge_chain(int n, int target_length) {
    if (n < 3) throw input_error("merge_chain: need at least 3 states");
    const int top = n * (n + 1) / 2 - 2;
    if (target_length < n + 1 || target_length > top)
        throw input_error("merge_chain: target length out of range");

    int steps = top - target_length;

    // decode the step count into (chained whites, slider, parked, merged)
    int slider = -1, slider_pos = -1;
    int first_detached = n;  // whites >= first_detached are parked at 0
    int merged = 0;          // parked whites converted to merges, from state n-1 down
    for (int w = n - 1; w >= 3 && steps > 0; --w) {
        if (steps <= w - 1) {
            slider = w;
            slider_pos = w - 1 - steps;
            first_detached = w + 1;
            steps = 0;
            if (slider_pos == 0) {  // fully parked
                first_detached = w;
                slider = -1;
            }
            break;
        }
        steps -= w - 1;
        first_detached = w;
    }
    if (steps > 0) {  // phase B: replace parked swaps by merges into state 0
        merged = steps;
        if (first_detached != 3 || merged > n - 3)
            throw std::logic_error("merge_chain: step decoding out of range");
    }

    int chain_end = (slider > 0 ? slider : first_detached) - 1;
    std::vector<Transformation> syms;
    syms.push_back(detail::merge_map(n, 0, 1));
    for (int i = 0; i < chain_end; ++i) syms.push_back(detail::swap_map(n, i, i + 1));
    if (slider > 0) syms.push_back(detail::swap_map(n, slider, slider_pos));
    for (int v = first_detached; v < n; ++v) {
        if (v >= n - merged)
            syms.push_back(detail::merge_map(n, v, 0));
        else
            syms.push_back(detail::swap_map(n, v, 0));
    }

    Dfa d(n, std::move(syms));
    if (d.alphabet() != n) throw std::logic_error("merge_chain: wrong alphabet size");
    detail::require_length(d, target_length, "merge_chain");
    return d;
}

/// Transitive minimal family: a star core with k extra states attached to
/// the hub by interchanges; synchronization length n + k for 1 <= k <= n-3.
inline Dfa star_interchange(int n, int k) {
    if (n < 5) throw input_error("star_interchange: need at least 5 states");
    if (k < 1 || k > n - 3) throw input_error("star_interchange: attached count out of range");
    const int hub = k;           // the marked state
    const int w0 = k + 1;        // first chain white
    const int mw = n - k - 3;    // number of chain whites
    const int T = n - 2, B = n - 1;

    std::vector<Transformation> syms;
    for (int i = 0; i < k; ++i) syms.push_back(detail::swap_map(n, i, hub));
    if (mw >= 1) syms.push_back(detail::merge_map(n, w0, hub));
    for (int j = 1; j < mw; ++j) syms.push_back(detail::merge_map(n, w0 + j, w0 + j - 1));
    syms.push_back(detail::merge_map(n, T, hub + mw));  // c
    {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        for (int q = hub; q <= hub + mw; ++q) img[q] = T;  // d
        syms.push_back(Transformation(n, img));
    }
    {
        std::vector<int> img(n);
        std::iota(img.begin(), img.end(), 0);
        for (int q = w0; q <= hub + mw; ++q) img[q] = B;  // e
        img[T] = B;
        img[B] = T;
        syms.push_back(Transformation(n, img));
    }

    Dfa d(n, std::move(syms));
    if (d.alphabet() != n) throw std::logic_error("star_interchange: wrong alphabet size");
    detail::require_length(d, n + k, "star_interchange");
    if (!is_transitive(d)) throw std::logic_error("star_interchange: not transitive");
    return d;
}

/// f(m) = (m-1)^2 + (n-m+1)(n-m)/2: the best length with m core states.
inline int nontransitive_length_f(int n, int m) {
    int t = n - m;
    return (m - 1) * (m - 1) + (t + 1) * t / 2;
}

/// Largest synchronization length of a nontransitive synchronizing DFA.
inline int nontransitive_max_length(int n) {
    if (n < 2) throw input_error("nontransitive_max_length: need at least 2 states");
    return std::max(n * (n - 1) / 2, (n - 2) * (n - 2) + 1);
}

/// Nontransitive DFA with exactly m states reachable from all others and
/// synchronization length f(m): a slow tail funneling into a cerny core.
inline Dfa nontransitive_extremal(int n, int m) {
    if (n < 3) throw input_error("nontransitive_extremal: need at least 3 states");
    if (m < 1 || m >= n) throw input_error("nontransitive_extremal: core size out of range");
    const int t = n - m;  // tail states 0..t-1, core states t..n-1

    auto core_cycle = [&](std::vector<int>& img) {
        for (int i = 0; i < m; ++i) img[t + i] = t + (i + 1) % m;
    };
    auto core_merge = [&](std::vector<int>& img) {
        for (int i = 0; i < m; ++i) img[t + i] = t + i;
        if (m >= 2) img[t] = t + 1;
    };

    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);

    // candidate tail actions for the merging symbol, tried in order
    std::vector<std::vector<std::pair<int, int>>> tail_variants;
    if (t == 1) {
        tail_variants.push_back({{0, t}});
    } else if (t == 2) {
        tail_variants.push_back({{0, 1}, {1, t}});
        tail_variants.push_back({{1, t}});
    } else {
        tail_variants.push_back({{0, 1}, {1, 0}, {t - 1, t}});
        tail_variants.push_back({{t - 1, t}});
    }

    const int want = nontransitive_length_f(n, m);
    for (const auto& tail : tail_variants) {
        std::vector<int> p_img = base;
        for (int i = 0; i < t; ++i) p_img[i] = t >= 2 ? (i + 1) % t : i;
        core_cycle(p_img);
        std::vector<int> m_img = base;
        core_merge(m_img);
        for (auto [from, to] : tail) m_img[from] = to;

        std::vector<Transformation> syms{Transformation(n, p_img), Transformation(n, m_img)};
        Dfa d(n, std::move(syms));
        auto len = sync_length(d);
        if (!len || *len != want) continue;
        if (is_transitive(d)) continue;
        // exactly m states reachable from every other state
        int reach_all = 0;
        for (int q = 0; q < n; ++q) {
            bool from_everywhere = true;
            for (int s = 0; s < n && from_everywhere; ++s) {
                uint32_t seen = 1u << s, frontier = seen;
                while (frontier && !(seen & (1u << q))) {
                    int v = std::countr_zero(frontier);
                    frontier &= frontier - 1;
                    for (int x = 0; x < d.alphabet(); ++x) {
                        uint32_t b = 1u << d.symbol(x)[v];
                        if (!(seen & b)) { seen |= b; frontier |= b; }
                    }
                }
                from_everywhere = (seen >> q) & 1u;
            }
            reach_all += from_everywhere;
        }
        if (reach_all != m) continue;
        return d;
    }
    throw std::logic_error("nontransitive_extremal: no layout attained the target length");
}

}  // namespace slowsync
