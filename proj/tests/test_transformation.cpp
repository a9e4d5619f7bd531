#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "slowsync/transformation.hpp"

using namespace slowsync;

namespace {

Transformation random_transformation(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(0, n - 1);
    std::vector<int> img(n);
    for (int q = 0; q < n; ++q) img[q] = d(rng);
    return Transformation(n, img);
}

Permutation random_permutation(int n, std::mt19937& rng) {
    std::vector<int> img(n);
    for (int q = 0; q < n; ++q) img[q] = q;
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(n, img);
}

}  // namespace

TEST_CASE("transformation predicates") {
    CHECK(Transformation::identity(4).is_identity());
    CHECK(Transformation::constant(4, 2).is_constant());
    CHECK(Transformation(4, {1, 2, 3, 0}).is_permutation());
    CHECK_FALSE(Transformation(4, {1, 1, 2, 3}).is_permutation());
    CHECK_FALSE(Transformation(4, {1, 1, 2, 3}).is_identity());
    CHECK_FALSE(Transformation(3, {0, 1, 2}).is_constant());
    CHECK(Transformation(2, {1, 1}).is_constant());
}

TEST_CASE("transformation validation") {
    CHECK_THROWS_AS(Transformation(3, {0, 1, 3}), input_error);
    CHECK_THROWS_AS(Transformation(3, {0, 1}), input_error);
    CHECK_THROWS_AS(Transformation(17, std::vector<int>(17, 0)), input_error);
}

TEST_CASE("code round trip and order agreement") {
    std::mt19937 rng(12345);
    for (int iter = 0; iter < 2000; ++iter) {
        int n = 2 + iter % 6;
        Transformation a = random_transformation(n, rng);
        Transformation b = random_transformation(n, rng);
        CHECK(Transformation::from_code(n, a.code()) == a);
        // integer code order must match lexicographic image order
        CHECK((a < b) == (a.code() < b.code()));
    }
}

TEST_CASE("conjugate identity and constant") {
    std::mt19937 rng(99);
    for (int n = 2; n <= 6; ++n) {
        Permutation p = random_permutation(n, rng);
        CHECK(conjugate(Transformation::identity(n), p).is_identity());
        Transformation c = conjugate(Transformation::constant(n, 1), p);
        CHECK(c == Transformation::constant(n, p[1]));
    }
}

TEST_CASE("conjugate satisfies defining equation pointwise") {
    // independent oracle: check r[p(q)] = p(t[q]) entry by entry
    auto check = [](const Transformation& t, const Permutation& p) {
        Transformation r = conjugate(t, p);
        for (int q = 0; q < t.size(); ++q) REQUIRE(r[p[q]] == p[t[q]]);
    };
    check(Transformation(3, {1, 2, 0}), Permutation(3, {1, 0, 2}));
    std::mt19937 rng(7);
    for (int iter = 0; iter < 500; ++iter) {
        int n = 2 + iter % 7;
        check(random_transformation(n, rng), random_permutation(n, rng));
    }
}

TEST_CASE("three-cycle conjugated by a transposition") {
    Transformation t(3, {1, 2, 0});
    Permutation swap01(3, {1, 0, 2});
    CHECK(conjugate(t, swap01) == Transformation(3, {2, 0, 1}));
}

TEST_CASE("conjugation is a group action") {
    std::mt19937 rng(4242);
    for (int iter = 0; iter < 500; ++iter) {
        int n = 2 + iter % 6;
        Transformation t = random_transformation(n, rng);
        Permutation p = random_permutation(n, rng);
        Permutation q = random_permutation(n, rng);
        CHECK(conjugate(conjugate(t, p), q) == conjugate(t, q.compose(p)));
    }
}

TEST_CASE("permutation inverse and compose laws") {
    std::mt19937 rng(5);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 + iter % 7;
        Permutation p = random_permutation(n, rng);
        CHECK(p.compose(p.inverse()) == Permutation::identity(n));
        CHECK(p.inverse().compose(p) == Permutation::identity(n));
    }
}

TEST_CASE("conjugate size mismatch is an input error") {
    CHECK_THROWS_AS(conjugate(Transformation(3, {0, 0, 1}), Permutation::identity(4)), input_error);
}
