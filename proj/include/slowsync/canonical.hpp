#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "dfa.hpp"

namespace slowsync {

namespace detail {

inline uint64_t pow_u64(uint64_t base, int exp) {
    uint64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

}  // namespace detail

/// Representative of a DFA's orbit under simultaneous state relabeling:
/// the lexicographically least sorted symbol list over all n! conjugations.
/// Brute force; jt_scan below is the table-driven fast path.
inline Dfa canonical_form(const Dfa& d) {
    const int n = d.size();
    if (n > 10) throw capacity_error("canonical_form: state count too large");
    if (d.alphabet() == 0) return d;

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    std::vector<Transformation> best = d.symbols();
    std::vector<Transformation> cur(d.alphabet());
    do {
        Permutation p(n, perm);
        for (int i = 0; i < d.alphabet(); ++i) cur[i] = conjugate(d.symbol(i), p);
        std::sort(cur.begin(), cur.end());
        if (std::lexicographical_compare(cur.begin(), cur.end(), best.begin(), best.end()))
            best = cur;
    } while (std::next_permutation(perm.begin(), perm.end()));

    return Dfa(n, std::move(best));
}

/// Emits the swap positions of the Johnson-Trotter order: each call to
/// next() swaps two adjacent entries of the maintained permutation and
/// returns the left position, until all n! permutations have been seen.
class JtSweep {
public:
    explicit JtSweep(int n) : n_(n), val_(n), dir_(n, -1) {
        std::iota(val_.begin(), val_.end(), 0);
    }

    /// Returns the swap position, or -1 when the sweep is exhausted.
    int next() {
        int best = -1, pos = -1;
        for (int i = 0; i < n_; ++i) {
            int j = i + dir_[i];
            if (j < 0 || j >= n_) continue;
            if (val_[j] < val_[i] && val_[i] > best) {
                best = val_[i];
                pos = i;
            }
        }
        if (pos < 0) return -1;
        int j = pos + dir_[pos];
        std::swap(val_[pos], val_[j]);
        std::swap(dir_[pos], dir_[j]);
        for (int i = 0; i < n_; ++i)
            if (val_[i] > best) dir_[i] = -dir_[i];
        return pos < j ? pos : j;
    }

private:
    int n_;
    std::vector<int> val_;
    std::vector<int> dir_;
};

/// Conjugation lookup tables for the n-1 adjacent transpositions: for each
/// t and each encoded transformation, the code of its conjugate by (t t+1).
/// (n-1) * n^n entries in total.
class JtTable {
public:
    static JtTable build(int n) {
        if (n < 2) throw input_error("jt table: need at least 2 states");
        if (n > 7) throw capacity_error("jt table: state count too large for dense table");
        JtTable T;
        T.n_ = n;
        const uint64_t total = detail::pow_u64(n, n);
        T.tbl_.assign(n - 1, std::vector<uint32_t>(total));
        std::vector<uint8_t> digit(n, 0);  // big-endian digits of the running code
        for (uint64_t code = 0; code < total; ++code) {
            for (int t = 0; t + 1 < n; ++t) {
                // r[q] = s(f(s(q))) with s = (t t+1)
                uint64_t rc = 0;
                for (int q = 0; q < n; ++q) {
                    int sq = q == t ? t + 1 : q == t + 1 ? t : q;
                    int f = digit[sq];
                    int r = f == t ? t + 1 : f == t + 1 ? t : f;
                    rc = rc * n + r;
                }
                T.tbl_[t][code] = static_cast<uint32_t>(rc);
            }
            for (int q = n - 1; q >= 0; --q) {  // odometer
                if (++digit[q] < n) break;
                digit[q] = 0;
            }
        }
        return T;
    }

    int states() const { return n_; }
    uint64_t entries() const { return tbl_.empty() ? 0 : tbl_.size() * tbl_[0].size(); }
    uint32_t conjugate_code(int t, uint32_t code) const { return tbl_[t][code]; }

private:
    int n_ = 0;
    std::vector<std::vector<uint32_t>> tbl_;
};

/// Same contract as canonical_form, computed by walking all n! relabelings
/// in Johnson-Trotter order with one table lookup per symbol per step.
inline Dfa jt_scan(const Dfa& d, const JtTable& table) {
    const int n = d.size();
    if (table.states() != n) throw input_error("jt_scan: table built for different state count");
    if (d.alphabet() == 0) return d;

    const int m = d.alphabet();
    std::vector<uint32_t> cur(m);
    for (int i = 0; i < m; ++i) cur[i] = static_cast<uint32_t>(d.symbol(i).code());
    std::vector<uint32_t> sorted = cur;  // input symbols are already sorted
    std::vector<uint32_t> best = sorted;

    JtSweep sweep(n);
    for (int pos; (pos = sweep.next()) >= 0;) {
        for (int i = 0; i < m; ++i) cur[i] = table.conjugate_code(pos, cur[i]);
        sorted = cur;
        std::sort(sorted.begin(), sorted.end());
        if (sorted < best) best = sorted;
    }

    std::vector<Transformation> syms;
    syms.reserve(m);
    for (uint32_t c : best) syms.push_back(Transformation::from_code(n, c));
    return Dfa(n, std::move(syms));
}

}  // namespace slowsync
