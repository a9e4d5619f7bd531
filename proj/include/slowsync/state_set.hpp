#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace slowsync {

/// A subset of states as an n-bit set (n <= 16).
struct StateSet {
    uint32_t bits = 0;

    StateSet() = default;
    explicit StateSet(uint32_t b) : bits(b) {}

    static StateSet all(int n) { return StateSet((1u << n) - 1); }
    static StateSet single(int q) { return StateSet(1u << q); }
    static StateSet pair(int a, int b) { return StateSet((1u << a) | (1u << b)); }

    int size() const { return std::popcount(bits); }
    bool empty() const { return bits == 0; }
    bool contains(int q) const { return (bits >> q) & 1u; }
    bool is_subset_of(StateSet other) const { return (bits & ~other.bits) == 0; }

    StateSet with(int q) const { return StateSet(bits | (1u << q)); }
    StateSet without(int q) const { return StateSet(bits & ~(1u << q)); }

    int min_state() const { return std::countr_zero(bits); }

    friend bool operator==(StateSet a, StateSet b) { return a.bits == b.bits; }
    friend bool operator<(StateSet a, StateSet b) { return a.bits < b.bits; }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (uint32_t b = bits; b;) {
            int q = std::countr_zero(b);
            b &= b - 1;
            if (!first) s += ",";
            s += std::to_string(q);
            first = false;
        }
        return s + "}";
    }
};

}  // namespace slowsync
