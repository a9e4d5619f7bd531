#pragma once

#include <algorithm>
#include <vector>

#include "power.hpp"

namespace slowsync {

/// Number of state pairs from which a merge is reachable in the pair
/// automaton (all C(n,2) pairs iff the DFA is synchronizing).
inline int count_mergeable_pairs(const Dfa& d) {
    const int n = d.size();
    const int m = d.alphabet();
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
    int count = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) count += mergeable[a * n + b];
    return count;
}

/// Sort candidate extension symbols: while the DFA is not synchronizing,
/// by ascending number of mergeable pairs after adding the symbol; once it
/// synchronizes, by ascending synchronization length after adding it.
/// Ties break by symbol code.  A speed heuristic only; enumeration output
/// does not depend on it.
inline std::vector<Transformation> order_candidates(const Dfa& d,
                                                    std::vector<Transformation> candidates) {
    const bool sync = is_synchronizing(d);
    std::vector<std::pair<long long, size_t>> keyed(candidates.size());
    for (size_t i = 0; i < candidates.size(); ++i) {
        Dfa ext = d.with_symbol(candidates[i]);
        long long key = sync ? *sync_length(ext) : count_mergeable_pairs(ext);
        keyed[i] = {key, i};
    }
    std::stable_sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return candidates[a.second].code() < candidates[b.second].code();
    });
    std::vector<Transformation> out;
    out.reserve(candidates.size());
    for (const auto& [key, i] : keyed) out.push_back(candidates[i]);
    return out;
}

}  // namespace slowsync
