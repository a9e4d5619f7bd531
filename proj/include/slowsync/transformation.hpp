#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "errors.hpp"

namespace slowsync {

inline constexpr int kMaxStates = 16;

/// A total map from {0,..,n-1} to itself; one alphabet symbol of a DFA.
///
/// Symbols are ordered lexicographically by their image arrays, and the
/// dense integer code uses big-endian base-n digits so that code order and
/// lexicographic order coincide.
class Transformation {
public:
    Transformation() = default;

    Transformation(int n, std::span<const int> images) : n_(static_cast<uint8_t>(n)) {
        if (n < 1 || n > kMaxStates) throw input_error("transformation: state count out of range");
        if (static_cast<int>(images.size()) != n)
            throw input_error("transformation: image list has wrong length");
        for (int q = 0; q < n; ++q) {
            if (images[q] < 0 || images[q] >= n)
                throw input_error("transformation: image out of range");
            img_[q] = static_cast<uint8_t>(images[q]);
        }
    }

    Transformation(int n, std::initializer_list<int> images)
        : Transformation(n, std::span<const int>(images.begin(), images.size())) {}

    static Transformation raw(int n, const std::array<uint8_t, kMaxStates>& img) {
        Transformation t;
        t.n_ = static_cast<uint8_t>(n);
        t.img_ = img;
        return t;
    }

    static Transformation identity(int n) {
        Transformation t;
        t.n_ = static_cast<uint8_t>(n);
        for (int q = 0; q < n; ++q) t.img_[q] = static_cast<uint8_t>(q);
        return t;
    }

    static Transformation constant(int n, int target) {
        Transformation t;
        t.n_ = static_cast<uint8_t>(n);
        for (int q = 0; q < n; ++q) t.img_[q] = static_cast<uint8_t>(target);
        return t;
    }

    int size() const { return n_; }
    int operator[](int q) const { return img_[q]; }

    void set(int q, int v) { img_[q] = static_cast<uint8_t>(v); }

    bool is_identity() const {
        for (int q = 0; q < n_; ++q)
            if (img_[q] != q) return false;
        return true;
    }

    bool is_constant() const {
        for (int q = 1; q < n_; ++q)
            if (img_[q] != img_[0]) return false;
        return true;
    }

    bool is_permutation() const {
        uint32_t seen = 0;
        for (int q = 0; q < n_; ++q) seen |= 1u << img_[q];
        return seen == (n_ >= 32 ? ~0u : (1u << n_) - 1);
    }

    /// Dense code with img[0] as the most significant base-n digit.
    uint64_t code() const {
        uint64_t c = 0;
        for (int q = 0; q < n_; ++q) c = c * n_ + img_[q];
        return c;
    }

    static Transformation from_code(int n, uint64_t code) {
        Transformation t;
        t.n_ = static_cast<uint8_t>(n);
        for (int q = n - 1; q >= 0; --q) {
            t.img_[q] = static_cast<uint8_t>(code % n);
            code /= n;
        }
        return t;
    }

    friend bool operator==(const Transformation& a, const Transformation& b) {
        if (a.n_ != b.n_) return false;
        for (int q = 0; q < a.n_; ++q)
            if (a.img_[q] != b.img_[q]) return false;
        return true;
    }

    friend bool operator<(const Transformation& a, const Transformation& b) {
        for (int q = 0; q < a.n_ && q < b.n_; ++q) {
            if (a.img_[q] != b.img_[q]) return a.img_[q] < b.img_[q];
        }
        return a.n_ < b.n_;
    }

private:
    uint8_t n_ = 0;
    std::array<uint8_t, kMaxStates> img_{};
};

/// A bijection on {0,..,n-1}, used for relabeling states.
class Permutation {
public:
    Permutation() = default;

    Permutation(int n, std::span<const int> images) : n_(static_cast<uint8_t>(n)) {
        if (n < 1 || n > kMaxStates) throw input_error("permutation: state count out of range");
        if (static_cast<int>(images.size()) != n)
            throw input_error("permutation: image list has wrong length");
        uint32_t seen = 0;
        for (int q = 0; q < n; ++q) {
            if (images[q] < 0 || images[q] >= n) throw input_error("permutation: image out of range");
            seen |= 1u << images[q];
            img_[q] = static_cast<uint8_t>(images[q]);
        }
        if (seen != (1u << n) - 1) throw input_error("permutation: not a bijection");
    }

    Permutation(int n, std::initializer_list<int> images)
        : Permutation(n, std::span<const int>(images.begin(), images.size())) {}

    static Permutation identity(int n) {
        std::vector<int> v(n);
        for (int q = 0; q < n; ++q) v[q] = q;
        return Permutation(n, v);
    }

    static Permutation transposition(int n, int a, int b) {
        std::vector<int> v(n);
        for (int q = 0; q < n; ++q) v[q] = q;
        std::swap(v[a], v[b]);
        return Permutation(n, v);
    }

    int size() const { return n_; }
    int operator[](int q) const { return img_[q]; }

    Permutation inverse() const {
        Permutation p;
        p.n_ = n_;
        for (int q = 0; q < n_; ++q) p.img_[img_[q]] = static_cast<uint8_t>(q);
        return p;
    }

    /// (a.compose(b))(q) = a(b(q))
    Permutation compose(const Permutation& b) const {
        if (n_ != b.n_) throw input_error("permutation: size mismatch");
        Permutation p;
        p.n_ = n_;
        for (int q = 0; q < n_; ++q) p.img_[q] = img_[b.img_[q]];
        return p;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) {
        if (a.n_ != b.n_) return false;
        for (int q = 0; q < a.n_; ++q)
            if (a.img_[q] != b.img_[q]) return false;
        return true;
    }

private:
    uint8_t n_ = 0;
    std::array<uint8_t, kMaxStates> img_{};
};

/// Relabel states by p: the result r satisfies r[p(q)] = p(t[q]).
inline Transformation conjugate(const Transformation& t, const Permutation& p) {
    if (t.size() != p.size()) throw input_error("conjugate: size mismatch");
    Transformation r;
    std::array<uint8_t, kMaxStates> img{};
    for (int q = 0; q < t.size(); ++q) img[p[q]] = static_cast<uint8_t>(p[t[q]]);
    return Transformation::raw(t.size(), img);
}

}  // namespace slowsync
