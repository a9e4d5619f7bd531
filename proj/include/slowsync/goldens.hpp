#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "search_types.hpp"

namespace slowsync {

// Expected values for the bundled reference tables.  Cells are stored as
// (alphabet, length, count) triples; range tables as rendered range strings
// per synchronization length, in the column order
// all / min / smin / max / max-min / max-smin ("*" = not checked).

namespace goldens {

struct CountCell {
    int alphabet;
    int length;
    uint64_t count;
};

inline CountTable to_table(const std::vector<CountCell>& cells) {
    CountTable t;
    for (const auto& c : cells) t.add(c.alphabet, c.length, c.count);
    return t;
}

/// Transitive minimal class counts, 3 states, all lengths.
inline CountTable transitive_minimal_3() {
    return to_table({{2, 4, 2}, {2, 3, 3}, {2, 2, 3}, {3, 4, 2}});
}

/// Transitive minimal class counts, 4 states, all lengths.
inline CountTable transitive_minimal_4() {
    return to_table({
        {2, 9, 2},  {2, 8, 5},  {2, 7, 11},  {2, 6, 20},  {2, 5, 49},  {2, 4, 52},
        {2, 3, 57}, {2, 2, 18}, {3, 9, 2},   {3, 8, 19},  {3, 7, 50},  {3, 6, 113},
        {3, 5, 114}, {3, 4, 188}, {3, 3, 84}, {4, 8, 2},  {4, 7, 5},   {4, 6, 5},
        {4, 5, 4},
    });
}

/// Transitive minimal class counts, 5 states, lengths 13..16.
inline CountTable transitive_minimal_5() {
    return to_table({
        {2, 16, 1}, {2, 15, 4}, {2, 14, 11}, {2, 13, 23},
        {3, 16, 1}, {3, 15, 8}, {3, 14, 31}, {3, 13, 89},
        {4, 15, 1}, {4, 14, 4}, {4, 13, 42},
        {5, 13, 2},
    });
}

/// Transitive minimal class counts, 6 states, length 25.
inline CountTable transitive_minimal_6() {
    return to_table({{2, 25, 2}});
}

struct RangeRow {
    int length;
    const char* cols[6];  // all, min, smin, max, max-min, max-smin; "*" = skip
};

struct RangeBlock {
    int n;
    std::vector<RangeRow> rows;
    RangeRow summary;
};

inline RangeBlock alphabet_ranges_2() {
    return {2, {{1, {"1--3", "1", "1", "3", "", ""}}}, {0, {"1--3", "1", "1", "3", "", ""}}};
}

inline RangeBlock alphabet_ranges_3() {
    return {3,
            {
                {4, {"2--5", "2--3", "2--3", "5", "", ""}},
                {3, {"2--9", "2", "2", "9", "", ""}},
                {2, {"1--23", "1--2", "1--2", "23", "", ""}},
                {1, {"1--26", "1", "1", "26", "", ""}},
            },
            {0, {"1--26", "1--3", "1--3", "5, 9, 23, 26", "", ""}}};
}

/// 4-state block.  The length-3 row and the summary row are only verified
/// where the narrower searches cover them ("*" marks skipped cells).
inline RangeBlock alphabet_ranges_4() {
    return {4,
            {
                {9, {"2--5", "2--3", "2--3", "2--3, 5", "2--3", "2--3"}},
                {8, {"2--8", "2--4", "2--4", "4--8", "", ""}},
                {7, {"2--17", "2--4", "2--4", "2, 4--9, 17", "2", "2"}},
                {6, {"2--17", "2--4", "2--4", "5--11, 13--15, 17", "", ""}},
                {5, {"2--41", "2--4", "2--5", "11--25, 35, 41", "", ""}},
                {4, {"2--59", "2--3", "2--4",
                     "23, 25, 27, 29, 31, 33, 35, 37, 39, 41, 43, 45, 47, 49, 51, 53, 59", "", ""}},
                {3, {"*", "1--3", "1--3", "*", "*", "*"}},
                {2, {"*", "1--2", "1--2", "251", "*", "*"}},
                {1, {"*", "1", "1", "255", "*", "*"}},
            },
            {0, {"*", "1--4", "1--5", "*", "2--3", "2--3"}}};
}

struct SubsetCountRow {
    int alphabet;
    uint64_t total;
    uint64_t transitive_minimal;
};

struct SubsetExtremal {
    int n;
    int subset_size;
    int max_length;
    std::vector<SubsetCountRow> rows;
};

inline std::vector<SubsetExtremal> subset_extremal_3() {
    return {{3, 2, 3, {{2, 6, 5}, {3, 23, 2}, {4, 30, 0}, {5, 20, 0}, {6, 7, 0}, {7, 1, 0}}}};
}

inline std::vector<SubsetExtremal> subset_extremal_4() {
    return {
        {4, 2, 6, {{2, 3, 3}, {3, 10, 4}, {4, 9, 0}, {5, 5, 0}, {6, 1, 0}}},
        {4, 3, 8, {{2, 3, 3}, {3, 11, 4}, {4, 13, 0}, {5, 6, 0}, {6, 1, 0}}},
    };
}

inline std::vector<SubsetExtremal> subset_extremal_5() {
    return {
        {5, 2, 10, {{2, 1, 1}, {3, 1, 1}}},
        {5, 3, 13, {{2, 2, 2}, {3, 2, 2}, {4, 1, 0}}},
        {5, 4, 15, {{2, 1, 1}, {3, 2, 2}, {4, 1, 0}}},
    };
}

struct SubsetRangeRow {
    int n;
    int subset_size;
    int length;
    const char* cols[6];
};

inline std::vector<SubsetRangeRow> subset_range_rows(int n) {
    switch (n) {
        case 2:
            return {{2, 2, 1, {"1--3", "1", "1", "3", "", ""}}};
        case 3:
            return {
                {3, 2, 3, {"2--7", "2--3", "2--3", "7", "", ""}},
                {3, 3, 4, {"2--5", "2--3", "2--3", "5", "", ""}},
            };
        case 4:
            return {
                {4, 2, 6, {"2--6", "2--3", "2--3", "3, 6", "3", "3"}},
                {4, 3, 8, {"2--6", "2--3", "2--3", "2--3, 5--6", "2--3", "2--3"}},
                {4, 4, 9, {"2--5", "2--3", "2--3", "2--3, 5", "2--3", "2--3"}},
            };
        case 5:
            return {
                {5, 2, 10, {"2--3", "2--3", "2--3", "2--3", "2--3", "2--3"}},
                {5, 3, 13, {"2--4", "2--3", "2--3", "2, 4", "2", "2"}},
                {5, 4, 15, {"2--4", "2--3", "2--3", "2, 4", "2", "2"}},
                {5, 5, 16, {"2--3", "2--3", "2--3", "2--3", "2--3", "2--3"}},
            };
        default:
            return {};
    }
}

/// Worst-case subset synchronization lengths of the 7-state cycle-plus-merge
/// automaton, per subset size.
inline std::vector<std::pair<int, int>> seven_state_subset_lengths() {
    return {{2, 21}, {3, 28}, {4, 31}, {5, 33}, {6, 35}, {7, 36}};
}

/// Largest synchronization length of a nontransitive synchronizing DFA.
inline std::vector<std::pair<int, int>> nontransitive_max_lengths() {
    return {{3, 3}, {4, 6}, {5, 10}, {6, 17}, {7, 26}};
}

}  // namespace goldens

}  // namespace slowsync
