#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "slowsync/constructions.hpp"
#include "slowsync/text_io.hpp"

using namespace slowsync;

TEST_CASE("dfa enforces the basic discipline") {
    Transformation a(3, {1, 2, 0});
    Transformation b(3, {1, 1, 2});
    Dfa d(3, {b, a});
    // sorted lexicographically by images
    REQUIRE(d.alphabet() == 2);
    CHECK(d.symbol(0) == b);
    CHECK(d.symbol(1) == a);

    CHECK_THROWS_AS(Dfa(3, {a, a}), input_error);
    CHECK_THROWS_AS(Dfa(3, {Transformation::identity(3)}), input_error);
    CHECK_THROWS_AS(Dfa(1, {}), input_error);
    CHECK_THROWS_AS(Dfa(17, {}), capacity_error);
    CHECK_NOTHROW(Dfa(5));  // empty symbol list is the search root
}

TEST_CASE("with_symbol and without_symbol keep the invariant") {
    Dfa d(3);
    d = d.with_symbol(Transformation(3, {1, 2, 0}));
    d = d.with_symbol(Transformation(3, {0, 0, 0}));
    REQUIRE(d.alphabet() == 2);
    CHECK(d.symbol(0) == Transformation(3, {0, 0, 0}));
    CHECK_THROWS_AS(d.with_symbol(Transformation(3, {1, 2, 0})), input_error);
    CHECK(d.without_symbol(0).alphabet() == 1);
}

TEST_CASE("dfa text format round trip") {
    Dfa c4 = cerny(4);
    std::string text = "4 2\n1 2 3 0\n1 1 2 3\n";
    CHECK(parse_dfa(text) == c4);
    CHECK(format_dfa(c4) == "4 2\n1 1 2 3\n1 2 3 0\n");
    CHECK(parse_dfa(format_dfa(c4)) == c4);
}

TEST_CASE("dfa text parse errors are distinct") {
    CHECK_THROWS_AS(parse_dfa("x y\n"), input_error);                 // malformed header
    CHECK_THROWS_AS(parse_dfa("3 1\n0 1 3\n"), input_error);          // entry out of range
    CHECK_THROWS_AS(parse_dfa("3 2\n0 0 0\n0 0 0\n"), input_error);   // duplicate symbol
    CHECK_THROWS_AS(parse_dfa("2 1\n0 1\n"), input_error);            // identity symbol
    CHECK_THROWS_AS(parse_dfa("3 1\n0 0 0\n7\n"), input_error);       // trailing data
    CHECK_THROWS_AS(parse_dfa("1 0\n"), input_error);                 // too few states
    CHECK_THROWS_AS(parse_dfa("17 0\n"), capacity_error);             // too many states
    CHECK_THROWS_AS(parse_dfa("3 2\n0 0 0\n"), input_error);          // truncated row
}

TEST_CASE("format emits canonical symbol order for random inputs") {
    std::mt19937 rng(31337);
    for (int iter = 0; iter < 300; ++iter) {
        int n = 2 + iter % 5;
        std::uniform_int_distribution<int> dv(0, n - 1);
        std::vector<Transformation> syms;
        for (int tries = 0; tries < 4; ++tries) {
            std::vector<int> img(n);
            for (int q = 0; q < n; ++q) img[q] = dv(rng);
            Transformation t(n, img);
            if (t.is_identity()) continue;
            bool dup = false;
            for (const auto& s : syms) dup |= s == t;
            if (!dup) syms.push_back(t);
        }
        // feed symbols unsorted through the text format
        std::string text = std::to_string(n) + " " + std::to_string(syms.size()) + "\n";
        for (const auto& t : syms) {
            for (int q = 0; q < n; ++q) text += std::to_string(t[q]) + (q + 1 < n ? " " : "\n");
        }
        Dfa d = parse_dfa(text);
        for (int i = 1; i < d.alphabet(); ++i) CHECK(d.symbol(i - 1) < d.symbol(i));
        CHECK(parse_dfa(format_dfa(d)) == d);
    }
}
