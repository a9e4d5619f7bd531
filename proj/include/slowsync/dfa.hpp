#pragma once

#include <algorithm>
#include <vector>

#include "errors.hpp"
#include "transformation.hpp"

namespace slowsync {

/// A basic DFA: a state count plus a duplicate-free, identity-free symbol
/// list kept sorted lexicographically by image arrays.  The empty symbol
/// list is allowed (search root).  No initial or final states.
class Dfa {
public:
    Dfa() = default;

    explicit Dfa(int n) : n_(n) { check_n(n); }

    Dfa(int n, std::vector<Transformation> symbols) : n_(n), syms_(std::move(symbols)) {
        check_n(n);
        for (const auto& t : syms_) {
            if (t.size() != n) throw input_error("dfa: symbol size mismatch");
            if (t.is_identity()) throw input_error("dfa: identity symbol not allowed");
        }
        std::sort(syms_.begin(), syms_.end());
        for (size_t i = 1; i < syms_.size(); ++i)
            if (syms_[i] == syms_[i - 1]) throw input_error("dfa: duplicate symbol");
    }

    int size() const { return n_; }
    int alphabet() const { return static_cast<int>(syms_.size()); }
    const Transformation& symbol(int x) const { return syms_[x]; }
    const std::vector<Transformation>& symbols() const { return syms_; }

    Dfa with_symbol(const Transformation& t) const {
        auto syms = syms_;
        syms.push_back(t);
        return Dfa(n_, std::move(syms));
    }

    Dfa without_symbol(int x) const {
        auto syms = syms_;
        syms.erase(syms.begin() + x);
        return Dfa(n_, std::move(syms));
    }

    bool has_symbol(const Transformation& t) const {
        return std::binary_search(syms_.begin(), syms_.end(), t);
    }

    friend bool operator==(const Dfa& a, const Dfa& b) {
        return a.n_ == b.n_ && a.syms_ == b.syms_;
    }

    friend bool operator<(const Dfa& a, const Dfa& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return std::lexicographical_compare(a.syms_.begin(), a.syms_.end(), b.syms_.begin(),
                                            b.syms_.end());
    }

private:
    static void check_n(int n) {
        if (n < 2) throw input_error("dfa: at least two states required");
        if (n > kMaxStates) throw capacity_error("dfa: more than 16 states not supported");
    }

    int n_ = 0;
    std::vector<Transformation> syms_;
};

/// Relabel all symbols simultaneously by p.
inline Dfa conjugate_all(const Dfa& d, const Permutation& p) {
    std::vector<Transformation> syms;
    syms.reserve(d.alphabet());
    for (const auto& t : d.symbols()) syms.push_back(conjugate(t, p));
    return Dfa(d.size(), std::move(syms));
}

}  // namespace slowsync
