#pragma once

#include <ostream>

#include "classification.hpp"
#include "goldens.hpp"

namespace slowsync {

namespace detail {

class CellCheck {
public:
    explicit CellCheck(std::ostream& out) : out_(out) {}

    template <typename A, typename B>
    void expect(const std::string& what, const A& expected, const B& actual) {
        if (!(expected == actual)) {
            ok_ = false;
            out_ << "  MISMATCH " << what << ": expected " << expected << " got " << actual
                 << '\n';
        }
    }

    void expect_counts(const CountTable& expected, const CountTable& actual) {
        auto keys = expected.cells;
        for (const auto& [k, v] : actual.cells) keys.emplace(k, keys.count(k) ? keys[k] : 0);
        for (const auto& [k, unused] : keys) {
            uint64_t e = expected.at(k.first, k.second), a = actual.at(k.first, k.second);
            if (e != a) {
                ok_ = false;
                out_ << "  MISMATCH alphabet=" << k.first << " length=" << k.second
                     << ": expected " << e << " got " << a << '\n';
            }
        }
    }

    bool ok() const { return ok_; }

private:
    std::ostream& out_;
    bool ok_ = true;
};

inline std::vector<SearchRecord> class_records(int n, int min_len, bool minimal, bool smin,
                                               bool maximal, unsigned annotate) {
    SearchConfig cfg;
    cfg.n = n;
    cfg.min_sync_length = min_len;
    cfg.filters.minimal = minimal;
    cfg.filters.semi_minimal = smin;
    cfg.filters.maximal = maximal;
    cfg.annotate = annotate;
    return enumerate_collect(cfg);
}

inline CountTable tm_counts(int n, int min_len, int jobs = 1) {
    SearchConfig cfg;
    cfg.n = n;
    cfg.min_sync_length = min_len;
    cfg.filters.transitive = true;
    cfg.filters.minimal = true;
    cfg.jobs = jobs;
    return count(enumerate_collect(cfg));
}

inline bool verify_tm_table(int n, int min_len, const CountTable& golden, std::ostream& out) {
    CellCheck check(out);
    check.expect_counts(golden, tm_counts(n, min_len));
    return check.ok();
}

/// Alphabet sizes realized by synchronizing DFAs at each length: the
/// semi-minimal sizes together with every stripping chain from a maximal
/// DFA down to one of its cores (each chain is alphabet-contiguous).
inline std::set<int> all_column(int length, const std::vector<SearchRecord>& min_recs,
                                const std::vector<SearchRecord>& smin_recs,
                                const std::vector<SearchRecord>& max_recs) {
    std::set<int> sizes;
    for (const auto& r : min_recs)
        if (r.sync_length == length) sizes.insert(r.dfa.alphabet());
    for (const auto& r : smin_recs)
        if (r.sync_length == length) sizes.insert(r.dfa.alphabet());
    for (const auto& r : max_recs) {
        if (r.sync_length != length) continue;
        Dfa core = strip_to_semi_minimal(r.dfa);
        for (int a = core.alphabet(); a <= r.dfa.alphabet(); ++a) sizes.insert(a);
    }
    return sizes;
}

inline bool verify_range_block(const goldens::RangeBlock& block, int max_threshold,
                               std::ostream& out) {
    const int n = block.n;
    unsigned ann = kFlagMinimal | kFlagSemiMinimal;
    auto min_recs = class_records(n, 1, true, false, false, ann);
    auto smin_recs = class_records(n, 1, false, true, false, ann);
    auto max_recs = class_records(n, max_threshold, false, false, true, ann);

    // the two analytically known maximal rows: every non-identity symbol
    // (length 1), and everything except the constants (length 2)
    uint64_t space = 1;
    for (int i = 0; i < n; ++i) space *= static_cast<uint64_t>(n);
    if (max_threshold > 1) {
        std::vector<Transformation> all_syms, no_const;
        for (uint64_t code = 0; code < space; ++code) {
            Transformation t = Transformation::from_code(n, code);
            if (t.is_identity()) continue;
            all_syms.push_back(t);
            if (!t.is_constant()) no_const.push_back(t);
        }
        Dfa full(n, all_syms), nc(n, no_const);
        SearchRecord r1, r2;
        r1.dfa = canonical_form(full);
        r1.sync_length = *sync_length(full);
        r1.maximal = true;
        r2.dfa = canonical_form(nc);
        r2.sync_length = *sync_length(nc);
        r2.maximal = true;
        CellCheck sanity(out);
        sanity.expect("analytic full-alphabet length", 1, r1.sync_length);
        sanity.expect("analytic no-constant length", 2, r2.sync_length);
        sanity.expect("analytic full-alphabet size", static_cast<int>(space - 1),
                      r1.dfa.alphabet());
        sanity.expect("analytic no-constant size", static_cast<int>(space - 1 - n),
                      r2.dfa.alphabet());
        if (!sanity.ok()) return false;
        max_recs.push_back(r1);
        max_recs.push_back(r2);
    }

    RangeTable actual;
    for (const auto& r : min_recs) actual.rows[r.sync_length][RangeTable::kMin].insert(r.dfa.alphabet());
    for (const auto& r : smin_recs)
        actual.rows[r.sync_length][RangeTable::kSmin].insert(r.dfa.alphabet());
    for (const auto& r : max_recs) {
        auto& cols = actual.rows[r.sync_length];
        cols[RangeTable::kMax].insert(r.dfa.alphabet());
        if (r.minimal.value_or(false)) cols[RangeTable::kMaxMin].insert(r.dfa.alphabet());
        if (r.semi_minimal.value_or(false)) cols[RangeTable::kMaxSmin].insert(r.dfa.alphabet());
    }

    CellCheck check(out);
    auto cell = [&](int length, int col) -> std::string {
        auto it = actual.rows.find(length);
        if (it == actual.rows.end()) return "";
        if (col == RangeTable::kAll)
            return render_int_set(all_column(length, min_recs, smin_recs, max_recs));
        return render_int_set(it->second[col]);
    };
    for (const auto& row : block.rows) {
        for (int c = 0; c < RangeTable::kColumns; ++c) {
            std::string want = row.cols[c];
            if (want == "*") continue;
            // maximal data only covers lengths >= max_threshold plus the
            // two analytic rows
            if (c >= RangeTable::kMax && row.length > 2 && row.length < max_threshold) continue;
            if (c == RangeTable::kAll && row.length < max_threshold) continue;
            check.expect("len " + std::to_string(row.length) + " col " + std::to_string(c), want,
                         cell(row.length, c));
        }
    }
    // summary row: union over lengths
    std::array<std::set<int>, RangeTable::kColumns> total;
    for (const auto& [len, cols] : actual.rows)
        for (int c = 0; c < RangeTable::kColumns; ++c) total[c].insert(cols[c].begin(), cols[c].end());
    for (int c = 0; c < RangeTable::kColumns; ++c) {
        std::string want = block.summary.cols[c];
        if (want == "*") continue;
        if (c == RangeTable::kAll) continue;  // derived column, checked per row
        check.expect("summary col " + std::to_string(c), want, render_int_set(total[c]));
    }
    return check.ok();
}

inline bool verify_subset_extremal(const std::vector<goldens::SubsetExtremal>& blocks,
                                   std::ostream& out) {
    CellCheck check(out);
    for (const auto& block : blocks) {
        SubsetAchievers got = subset_achievers(block.n, block.subset_size);
        check.expect("n=" + std::to_string(block.n) + " s=" + std::to_string(block.subset_size) +
                         " max length",
                     block.max_length, got.max_length);
        CountTable expect_all, expect_tm, got_all, got_tm;
        for (const auto& row : block.rows) {
            expect_all.add(row.alphabet, block.max_length, row.total);
            if (row.transitive_minimal)
                expect_tm.add(row.alphabet, block.max_length, row.transitive_minimal);
        }
        for (const auto& r : got.records) {
            got_all.add(r.dfa.alphabet(), r.subset_length);
            if (r.transitive.value_or(false) && r.minimal.value_or(false))
                got_tm.add(r.dfa.alphabet(), r.subset_length);
        }
        check.expect_counts(expect_all, got_all);
        check.expect_counts(expect_tm, got_tm);
    }
    return check.ok();
}

inline bool verify_subset_range(int n, std::ostream& out) {
    CellCheck check(out);
    for (const auto& row : goldens::subset_range_rows(n)) {
        SubsetAchievers got = subset_achievers(row.n, row.subset_size,
                                               kFlagTransitive | kFlagMinimal | kFlagSemiMinimal);
        check.expect("n=" + std::to_string(row.n) + " s=" + std::to_string(row.subset_size) +
                         " max length",
                     row.length, got.max_length);
        RangeTable t;
        for (auto& r : got.records) {
            r.maximal = classify(r.dfa).maximal;
            auto& cols = t.rows[r.subset_length];
            int a = r.dfa.alphabet();
            cols[RangeTable::kAll].insert(a);
            if (r.minimal.value_or(false)) cols[RangeTable::kMin].insert(a);
            if (r.semi_minimal.value_or(false)) cols[RangeTable::kSmin].insert(a);
            if (r.maximal.value_or(false)) {
                cols[RangeTable::kMax].insert(a);
                if (r.minimal.value_or(false)) cols[RangeTable::kMaxMin].insert(a);
                if (r.semi_minimal.value_or(false)) cols[RangeTable::kMaxSmin].insert(a);
            }
        }
        const auto& cols = t.rows[row.length];
        for (int c = 0; c < RangeTable::kColumns; ++c) {
            std::string want = row.cols[c];
            if (want == "*") continue;
            check.expect("n=" + std::to_string(row.n) + " s=" + std::to_string(row.subset_size) +
                             " col " + std::to_string(c),
                         want, render_int_set(cols[c]));
        }
    }
    return check.ok();
}

inline bool verify_nontransitive(std::ostream& out) {
    CellCheck check(out);
    for (auto [n, want] : goldens::nontransitive_max_lengths()) {
        check.expect("max length n=" + std::to_string(n), want, nontransitive_max_length(n));
        int best = 0;
        for (int m = 1; m < n; ++m) {
            Dfa d = nontransitive_extremal(n, m);  // self-verifies length f(m)
            best = std::max(best, *sync_length(d));
        }
        check.expect("attained n=" + std::to_string(n), want, best);
    }
    // exhaustively: no nontransitive class exceeds the bound for n <= 4
    for (int n = 3; n <= 4; ++n) {
        SearchConfig cfg;
        cfg.n = n;
        cfg.min_sync_length = nontransitive_max_length(n) + 1;
        cfg.annotate = kFlagTransitive;
        int bad = 0;
        for (const auto& r : enumerate_collect(cfg))
            if (!r.transitive.value_or(true)) ++bad;
        check.expect("classes above the bound that are nontransitive, n=" + std::to_string(n), 0,
                     bad);
    }
    return check.ok();
}

inline bool verify_seven_state_spots(std::ostream& out) {
    CellCheck check(out);
    Dfa c7 = cerny(7);
    check.expect("length", 36, *sync_length(c7));
    std::vector<uint8_t> dist = collapse_distances(c7);
    for (auto [s, want] : goldens::seven_state_subset_lengths()) {
        int worst = 0;
        for (uint32_t S = 1; S < (1u << 7); ++S)
            if (std::popcount(S) == s) worst = std::max(worst, static_cast<int>(dist[S]));
        check.expect("worst subset of size " + std::to_string(s), want, worst);
    }
    return check.ok();
}

inline bool verify_cerny_family(std::ostream& out) {
    CellCheck check(out);
    for (int n = 2; n <= 12; ++n)
        check.expect("length n=" + std::to_string(n), (n - 1) * (n - 1), *sync_length(cerny(n)));
    for (int n = 2; n <= 8; ++n) {
        auto got = shortest_sync_word(cerny(n));
        check.expect("word found n=" + std::to_string(n), true, got.has_value());
        if (got) {
            auto want = cerny_expected_word(n);
            check.expect("word n=" + std::to_string(n), true, *got == want);
        }
    }
    return check.ok();
}

}  // namespace detail

inline std::vector<std::string> verify_table_names(bool full_budget) {
    std::vector<std::string> names = {"cerny", "om3",     "om4",     "om5",
                                      "f234-2", "f234-3", "f234-4",  "os-3",
                                      "os-4",   "range-2", "range-3", "range-4",
                                      "nontransitive", "n7-spot"};
    if (full_budget) {
        names.push_back("om6");
        names.push_back("os-5");
        names.push_back("range-5");
    }
    return names;
}

/// Reproduce one bundled reference table and compare cell by cell.
inline bool verify_table(const std::string& name, std::ostream& out, int jobs = 1) {
    using namespace detail;
    if (name == "cerny") return verify_cerny_family(out);
    if (name == "om3") return verify_tm_table(3, 1, goldens::transitive_minimal_3(), out);
    if (name == "om4") return verify_tm_table(4, 1, goldens::transitive_minimal_4(), out);
    if (name == "om5") {
        CellCheck check(out);
        check.expect_counts(goldens::transitive_minimal_5(), tm_counts(5, 13, jobs));
        return check.ok();
    }
    if (name == "om6") {
        CellCheck check(out);
        check.expect_counts(goldens::transitive_minimal_6(), tm_counts(6, 25, jobs));
        return check.ok();
    }
    if (name == "f234-2") return verify_range_block(goldens::alphabet_ranges_2(), 1, out);
    if (name == "f234-3") return verify_range_block(goldens::alphabet_ranges_3(), 1, out);
    if (name == "f234-4") return verify_range_block(goldens::alphabet_ranges_4(), 4, out);
    if (name == "os-3") return verify_subset_extremal(goldens::subset_extremal_3(), out);
    if (name == "os-4") return verify_subset_extremal(goldens::subset_extremal_4(), out);
    if (name == "os-5") return verify_subset_extremal(goldens::subset_extremal_5(), out);
    if (name == "range-2") return verify_subset_range(2, out);
    if (name == "range-3") return verify_subset_range(3, out);
    if (name == "range-4") return verify_subset_range(4, out);
    if (name == "range-5") return verify_subset_range(5, out);
    if (name == "nontransitive") return verify_nontransitive(out);
    if (name == "n7-spot") return verify_seven_state_spots(out);
    throw input_error("verify: unknown table " + name);
}

}  // namespace slowsync
