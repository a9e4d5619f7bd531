#pragma once

#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "bounds.hpp"
#include "canonical.hpp"
#include "classify.hpp"
#include "search_types.hpp"

namespace slowsync {

struct SearchProgress {
    std::function<bool(size_t root_index)> skip_root;  // resume support
    std::function<void(size_t root_index)> root_done;
};

namespace detail {

/// All candidate symbols for one state count, with dense ids in code order,
/// their pair-automaton actions, and conjugacy-orbit representatives.
struct Universe {
    int n = 0;
    int npairs = 0;
    uint32_t all_pairs_mask = 0;
    uint64_t identity_code = 0;
    std::vector<Transformation> symbols;  // non-identity, ascending code
    std::vector<uint8_t> paction;         // id * npairs + p; value npairs = merged
    std::vector<uint8_t> orbit_root;      // per id
    std::vector<uint32_t> roots;          // ids of orbit representatives
    JtTable jt;

    static Universe build(int n) {
        Universe u;
        u.n = n;
        u.npairs = n * (n - 1) / 2;
        u.all_pairs_mask = u.npairs == 32 ? ~0u : (1u << u.npairs) - 1;
        u.jt = JtTable::build(n);
        u.identity_code = Transformation::identity(n).code();
        const uint64_t space = symbol_space(n);

        std::vector<int> pidx(n * n, -1);
        int np = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pidx[a * n + b] = np++;

        u.symbols.reserve(space - 1);
        for (uint64_t code = 0; code < space; ++code) {
            if (code == u.identity_code) continue;
            u.symbols.push_back(Transformation::from_code(n, code));
        }
        u.paction.assign(u.symbols.size() * u.npairs, 0);
        for (size_t id = 0; id < u.symbols.size(); ++id) {
            const Transformation& t = u.symbols[id];
            uint8_t* row = u.paction.data() + id * u.npairs;
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    int x = t[a], y = t[b];
                    row[pidx[a * n + b]] = static_cast<uint8_t>(
                        x == y ? u.npairs : pidx[std::min(x, y) * n + std::max(x, y)]);
                }
            }
        }

        // orbit representatives: the least code of each conjugacy orbit,
        // found by sweeping codes in increasing order
        std::vector<uint8_t> visited(space, 0);
        visited[u.identity_code] = 1;
        u.orbit_root.assign(u.symbols.size(), 0);
        std::vector<uint32_t> stack;
        for (uint64_t code = 0; code < space; ++code) {
            if (visited[code]) continue;
            u.orbit_root[u.id_of_code(code)] = 1;
            u.roots.push_back(static_cast<uint32_t>(u.id_of_code(code)));
            stack.assign(1, static_cast<uint32_t>(code));
            visited[code] = 1;
            while (!stack.empty()) {
                uint32_t c = stack.back();
                stack.pop_back();
                for (int t = 0; t + 1 < n; ++t) {
                    uint32_t c2 = u.jt.conjugate_code(t, c);
                    if (!visited[c2]) {
                        visited[c2] = 1;
                        stack.push_back(c2);
                    }
                }
            }
        }
        return u;
    }

    size_t id_of_code(uint64_t code) const { return code - (code > identity_code ? 1 : 0); }
};

inline uint32_t fnv1a(const uint64_t* data, size_t count) {
    uint64_t h = 1469598103934665603ULL;
    for (size_t i = 0; i < count; ++i) {
        uint64_t v = data[i];
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 1099511628211ULL;
        }
    }
    return static_cast<uint32_t>(h ^ (h >> 32));
}

class Searcher {
public:
    Searcher(const SearchConfig& cfg, const Universe& uni, RecordSink sink)
        : cfg_(cfg), uni_(uni), sink_(std::move(sink)) {
        cerny_cap_ = (cfg.n - 1) * (cfg.n - 1);
        int k = cfg.shard_count;
        shard_prefix_ = 0;
        while ((1 << shard_prefix_) < k) ++shard_prefix_;
        bounds_active_ = cfg_.prune == PruneMode::on ||
                         (cfg_.prune == PruneMode::automatic &&
                          (cfg_.subset_size > 0 || cfg_.min_sync_length >= 2 * cfg_.n - 3));
        min_mode_ = cfg_.filters.minimal;
        smin_mode_ = !min_mode_ && cfg_.filters.semi_minimal;
    }

    void run(const SearchProgress& progress) {
        for (size_t r = 0; r < uni_.roots.size(); ++r) {
            if (progress.skip_root && progress.skip_root(r)) continue;
            int id = static_cast<int>(uni_.roots[r]);
            push(id);
            uint32_t cl = closure_from(0);
            visit(cl);
            pop();
            if (progress.root_done) progress.root_done(r);
        }
    }

    /// Process a single root subtree (used by the parallel driver).
    void run_root(size_t root_index) {
        int id = static_cast<int>(uni_.roots[root_index]);
        push(id);
        visit(closure_from(0));
        pop();
    }

private:
    void push(int id) {
        ids_.push_back(id);
        syms_.push_back(uni_.symbols[id]);
        codes_.push_back(uni_.symbols[id].code());
    }
    void pop() {
        ids_.pop_back();
        syms_.pop_back();
        codes_.pop_back();
    }

    uint32_t closure_step(uint32_t mask) const {
        // one forward round over all pairs and all chosen symbols
        uint32_t out = mask;
        const int np = uni_.npairs;
        uint32_t pending = uni_.all_pairs_mask & ~mask;
        while (pending) {
            int p = std::countr_zero(pending);
            pending &= pending - 1;
            for (int id : ids_) {
                uint8_t r = uni_.paction[static_cast<size_t>(id) * np + p];
                if (r == np || ((out >> r) & 1u)) {
                    out |= 1u << p;
                    break;
                }
            }
        }
        return out;
    }

    uint32_t closure_from(uint32_t mask) const {
        uint32_t cur = mask;
        while (true) {
            uint32_t next = closure_step(cur);
            if (next == cur) return cur;
            cur = next;
        }
    }

    bool shard_gate(int depth, bool& may_emit) const {
        may_emit = true;
        if (cfg_.shard_count == 1) return true;
        size_t plen = std::min<size_t>(depth, shard_prefix_);
        uint32_t owner = fnv1a(codes_.data(), plen) % cfg_.shard_count;
        may_emit = owner == static_cast<uint32_t>(cfg_.shard_index);
        if (depth >= shard_prefix_ && !may_emit) return false;  // whole subtree elsewhere
        return true;
    }

    void visit(uint32_t closure) {
        const int depth = static_cast<int>(ids_.size());
        bool may_emit = true;
        if (!shard_gate(depth, may_emit)) return;
        if (closure == uni_.all_pairs_mask)
            visit_sync(may_emit);
        else
            visit_nonsync(closure);
    }

    void visit_sync(bool may_emit) {
        const int depth = static_cast<int>(ids_.size());
        Dfa d(cfg_.n, syms_);
        int L = *sync_length(d);

        if (cfg_.subset_size > 0) {
            int worst = worst_subset_length(d);
            if (worst < cfg_.min_sync_length) return;
            if (may_emit) try_emit(d, L, worst);
            if (can_extend(depth)) extend(uni_.all_pairs_mask);
            return;
        }
        if (min_mode_) {
            if (may_emit && L >= std::max(cfg_.min_sync_length, depth)) try_emit(d, L, 0);
            return;  // extensions of synchronizing DFAs are never minimal
        }
        if (smin_mode_) {
            if (may_emit && L >= std::max(cfg_.min_sync_length, depth)) try_emit(d, L, 0);
            if (L >= std::max(cfg_.min_sync_length, depth + 1) && can_extend(depth))
                extend(uni_.all_pairs_mask);
            return;
        }
        if (L < cfg_.min_sync_length) return;  // extensions only shrink the length
        if (may_emit) try_emit(d, L, 0);
        if (can_extend(depth)) extend(uni_.all_pairs_mask);
    }

    void visit_nonsync(uint32_t closure) {
        const int depth = static_cast<int>(ids_.size());
        if (!can_extend(depth)) return;
        int eff_threshold = cfg_.min_sync_length;
        if (min_mode_ || smin_mode_) {
            eff_threshold = std::max(eff_threshold, depth + 1);
            if (depth + 1 > cerny_cap_) return;  // alphabet never exceeds the length
        }
        if (bounds_active_ && !bound_admits(eff_threshold)) return;
        extend(closure);
    }

    bool can_extend(int depth) const {
        return !cfg_.max_alphabet || depth < *cfg_.max_alphabet;
    }

    void extend(uint32_t closure) {
        const int first = ids_.empty() ? 0 : ids_.back() + 1;
        const int total = static_cast<int>(uni_.symbols.size());
        for (int id = first; id < total; ++id) {
            push(id);
            uint32_t cl2 = incorporate(closure, id);
            visit(cl2);
            pop();
        }
    }

    uint32_t incorporate(uint32_t closure, int /*id*/) const {
        // new symbol may merge previously stuck pairs; rerun the fixpoint
        return closure_from(closure);
    }

    bool bound_admits(int threshold) {
        Dfa d(cfg_.n, syms_);
        const int cap = cfg_.subset_size > 0 ? cfg_.subset_size : cfg_.n;
        PowerAnalysis pa(d, cap);
        BoundsOptions opt{cfg_.improved_bounds, cfg_.improved_bounds};
        BoundsComputer bc(pa, opt);
        int bound;
        if (cfg_.subset_size > 0) {
            bound = bc.Lpp(cfg_.improved_bounds, cfg_.subset_size);
        } else {
            switch (cfg_.bound_variant) {
                case BoundVariant::L:
                    bound = cfg_.improved_bounds ? bc.L_improved() : bc.L_plain();
                    break;
                case BoundVariant::Lp:
                    bound = cfg_.improved_bounds ? bc.Lp_improved() : bc.Lp_plain();
                    break;
                default:
                    bound = bc.Lpp(cfg_.improved_bounds);
                    break;
            }
        }
        return bound >= threshold;
    }

    int worst_subset_length(const Dfa& d) const {
        std::vector<uint8_t> dist = collapse_distances(d);
        int worst = 0;
        const uint32_t count = 1u << cfg_.n;
        for (uint32_t S = 1; S < count; ++S)
            if (std::popcount(S) == cfg_.subset_size) worst = std::max(worst, static_cast<int>(dist[S]));
        return worst;
    }

    void try_emit(const Dfa& d, int L, int worst) {
        const unsigned want = cfg_.required_flags();
        SearchRecord rec;
        rec.sync_length = L;
        rec.subset_size = cfg_.subset_size;
        rec.subset_length = worst;

        if (want & kFlagTransitive) {
            rec.transitive = is_transitive(d);
            if (cfg_.filters.transitive && !*rec.transitive) return;
        }
        if (want & (kFlagMinimal | kFlagSemiMinimal)) {
            bool minimal = true, semi = true;
            for (int x = 0; x < d.alphabet() && (minimal || semi); ++x) {
                auto rl = sync_length(d.without_symbol(x));
                if (rl) {
                    minimal = false;
                    if (*rl == L) semi = false;
                }
            }
            rec.minimal = minimal;
            rec.semi_minimal = semi;
            if (cfg_.filters.minimal && !minimal) return;
            if (cfg_.filters.semi_minimal && !semi) return;
        }
        if (want & kFlagMaximal) {
            rec.maximal = classify(d).maximal;
            if (cfg_.filters.maximal && !*rec.maximal) return;
        }

        rec.dfa = jt_scan(d, uni_.jt);
        std::vector<uint64_t> key;
        key.reserve(rec.dfa.alphabet());
        for (const auto& t : rec.dfa.symbols()) key.push_back(t.code());
        if (!seen_.insert(std::move(key)).second) return;
        sink_(rec);
    }

    const SearchConfig& cfg_;
    const Universe& uni_;
    RecordSink sink_;
    std::vector<int> ids_;
    std::vector<Transformation> syms_;
    std::vector<uint64_t> codes_;
    std::set<std::vector<uint64_t>> seen_;
    int cerny_cap_ = 0;
    int shard_prefix_ = 0;
    bool bounds_active_ = false;
    bool min_mode_ = false;
    bool smin_mode_ = false;
};

void maximal_pipeline(const SearchConfig& cfg, const Universe& uni, const RecordSink& sink);

}  // namespace detail

/// Depth-first enumeration of basic DFAs up to state relabeling: one record
/// per isomorphism class meeting the synchronization-length threshold and
/// the configured filters.
inline void enumerate(const SearchConfig& cfg, const RecordSink& sink,
                      const SearchProgress& progress = {}) {
    cfg.validate();
    if (cfg.subset_size > 0 && cfg.filters.any_class())
        throw input_error("search: class filters are not supported in subset mode");
    detail::Universe uni = detail::Universe::build(cfg.n);
    if (cfg.filters.maximal) {
        detail::maximal_pipeline(cfg, uni, sink);
        return;
    }
    if (cfg.jobs <= 1) {
        detail::Searcher s(cfg, uni, sink);
        s.run(progress);
        return;
    }

    // parallel over root subtrees; results merged deterministically
    std::atomic<size_t> next_root{0};
    std::mutex mtx;
    std::vector<SearchRecord> all;
    auto worker = [&]() {
        std::vector<SearchRecord> local;
        detail::Searcher s(cfg, uni, [&local](const SearchRecord& r) { local.push_back(r); });
        while (true) {
            size_t r = next_root.fetch_add(1);
            if (r >= uni.roots.size()) break;
            if (progress.skip_root && progress.skip_root(r)) continue;
            s.run_root(r);
            if (progress.root_done) {
                std::lock_guard<std::mutex> lock(mtx);
                progress.root_done(r);
            }
        }
        std::lock_guard<std::mutex> lock(mtx);
        all.insert(all.end(), local.begin(), local.end());
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < cfg.jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (const auto& r : all) sink(r);
}

/// Enumerate into a sorted, duplicate-free vector.
inline std::vector<SearchRecord> enumerate_collect(const SearchConfig& cfg) {
    std::vector<SearchRecord> out;
    enumerate(cfg, [&out](const SearchRecord& r) { out.push_back(r); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Partition a search into shard configs whose merged output equals the
/// unsharded run.
inline std::vector<SearchConfig> shard_split(const SearchConfig& cfg) {
    if (cfg.shard_count < 1) throw input_error("shard_split: shard count must be positive");
    std::vector<SearchConfig> out;
    for (int i = 0; i < cfg.shard_count; ++i) {
        SearchConfig c = cfg;
        c.shard_index = i;
        out.push_back(c);
    }
    return out;
}

namespace detail {

/// Enumerate all maximal DFAs with length >= threshold: every maximal DFA
/// contains a semi-minimal core of the same length, and all its symbols
/// keep the core's length, so it is a maximal fixed point inside the core's
/// length-preserving closure.
inline void maximal_fixed_points(const Dfa& core, int L,
                                 const std::function<void(const Dfa&)>& emit) {
    std::vector<Transformation> universe = length_preserving_candidates(core, L);

    std::function<void(const Dfa&, std::vector<int>&)> rec = [&](const Dfa& cur,
                                                                 std::vector<int>& excluded) {
        SubsetOps ops = SubsetOps::build(cur);
        std::vector<int> addable;
        for (size_t i = 0; i < universe.size(); ++i) {
            if (cur.has_symbol(universe[i])) continue;
            if (std::find(excluded.begin(), excluded.end(), static_cast<int>(i)) != excluded.end())
                continue;
            if (sync_length_with(ops, universe[i]) == L) addable.push_back(static_cast<int>(i));
        }
        if (!excluded.empty()) {
            // a branch is dead once some excluded symbol stays addable in
            // every completion (adding symbols never revives a candidate)
            Dfa widest = cur;
            for (int i : addable) widest = widest.with_symbol(universe[i]);
            SubsetOps wops = SubsetOps::build(widest);
            for (int i : excluded)
                if (sync_length_with(wops, universe[i]) == L) return;
        }
        if (addable.empty()) {
            emit(cur);
            return;
        }
        int pick = addable.front();
        rec(cur.with_symbol(universe[pick]), excluded);
        excluded.push_back(pick);
        rec(cur, excluded);
        excluded.pop_back();
    };

    std::vector<int> excluded;
    rec(core, excluded);
}

inline void maximal_pipeline(const SearchConfig& cfg, const Universe& uni, const RecordSink& sink) {
    SearchConfig core_cfg = cfg;
    core_cfg.filters = SearchFilters{};
    core_cfg.filters.semi_minimal = true;
    core_cfg.annotate = 0;
    core_cfg.shard_count = 1;
    core_cfg.shard_index = 0;

    std::vector<SearchRecord> cores;
    Searcher s(core_cfg, uni, [&cores](const SearchRecord& r) { cores.push_back(r); });
    s.run({});

    std::set<std::vector<uint64_t>> seen;
    std::vector<SearchRecord> results;
    for (const auto& core : cores) {
        maximal_fixed_points(core.dfa, core.sync_length, [&](const Dfa& max_dfa) {
            Dfa canon = jt_scan(max_dfa, uni.jt);
            std::vector<uint64_t> key;
            for (const auto& t : canon.symbols()) key.push_back(t.code());
            if (!seen.insert(std::move(key)).second) return;

            SearchRecord rec;
            rec.dfa = canon;
            rec.sync_length = core.sync_length;
            rec.maximal = true;
            unsigned want = cfg.required_flags();
            if (want & kFlagTransitive) {
                rec.transitive = is_transitive(canon);
                if (cfg.filters.transitive && !*rec.transitive) return;
            }
            if (want & (kFlagMinimal | kFlagSemiMinimal)) {
                bool minimal = true, semi = true;
                for (int x = 0; x < canon.alphabet() && (minimal || semi); ++x) {
                    auto rl = sync_length(canon.without_symbol(x));
                    if (rl) {
                        minimal = false;
                        if (*rl == rec.sync_length) semi = false;
                    }
                }
                rec.minimal = minimal;
                rec.semi_minimal = semi;
                if (cfg.filters.minimal && !minimal) return;
                if (cfg.filters.semi_minimal && !semi) return;
            }
            results.push_back(rec);
        });
    }
    std::sort(results.begin(), results.end());
    for (const auto& r : results) sink(r);
}

}  // namespace detail

}  // namespace slowsync
