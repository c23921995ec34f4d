#include <doctest.h>

#include <random>

#include "cwsearch/affine.hpp"
#include "cwsearch/compress.hpp"
#include "cwsearch/contents.hpp"
#include "cwsearch/error.hpp"
#include "cwsearch/seqcore.hpp"
#include "oracles.hpp"

using namespace cwsearch;

namespace {

AffineMap random_map(std::mt19937_64& rng, int k) {
    for (;;) {
        const int u = static_cast<int>(rng() % k);
        if (std::gcd(u, k) == 1) return AffineMap::make(u, static_cast<int>(rng() % k), k);
    }
}

}  // namespace

TEST_CASE("make validates units") {
    CHECK_THROWS_AS(AffineMap::make(2, 0, 20), error);
    CHECK_THROWS_AS(AffineMap::make(1, 0, 0), error);
    const auto s = AffineMap::make(-1, 25, 20);
    CHECK(s.u == 19);
    CHECK(s.v == 5);
    CHECK(AffineMap::make(0, 0, 1) == AffineMap::identity(1));
}

TEST_CASE("apply") {
    const std::vector<int> abcd{10, 20, 30, 40};
    CHECK(cwsearch::apply(AffineMap::identity(4), abcd) == abcd);
    CHECK(cwsearch::apply(AffineMap::make(1, 1, 4), abcd) == std::vector<int>{40, 10, 20, 30});
    CHECK_THROWS_AS(cwsearch::apply(AffineMap::identity(5), abcd), error);

    const auto y = cwsearch::apply(AffineMap::make(3, 0, 20), oracle::B2);
    CHECK(content_of(y, 3).mu == std::vector<int>{16, 0, 0, 0, 0, 3, 1});
    CHECK(oracle::paf_zero(y));

    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 30);
        const auto x = oracle::random_ternary(rng, k);
        const auto s = random_map(rng, k);
        CHECK(cwsearch::apply(s, x) == oracle::act(s.u, s.v, x));
    }
}

TEST_CASE("compose and invert") {
    CHECK(invert(AffineMap::identity(20)) == AffineMap::identity(20));
    // Matrix product [[3,1],[0,1]] [[7,2],[0,1]] = [[21,7],[0,1]], i.e. (1, 7) mod 20.
    CHECK(compose(AffineMap::make(3, 1, 20), AffineMap::make(7, 2, 20)) == AffineMap::make(1, 7, 20));
    CHECK_THROWS_AS(compose(AffineMap::identity(20), AffineMap::identity(12)), error);

    std::mt19937_64 rng(7);
    for (int k : {12, 20, 60}) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto s = random_map(rng, k);
            const auto t = random_map(rng, k);
            CHECK(compose(s, invert(s)) == AffineMap::identity(k));
            const auto x = oracle::random_ternary(rng, k);
            CHECK(cwsearch::apply(compose(s, t), x) == cwsearch::apply(s, cwsearch::apply(t, x)));
            CHECK(cwsearch::apply(invert(s), cwsearch::apply(s, x)) == x);
        }
    }
}

TEST_CASE("enumerate_group sizes") {
    CHECK(enumerate_group(20).size() == 160);
    CHECK(enumerate_group(60).size() == 960);
    CHECK(enumerate_group(1).size() == 1);
    for (int k = 1; k <= 40; ++k) {
        const auto g = enumerate_group(k);
        CHECK(g.size() == static_cast<std::size_t>(k * euler_phi(k)));
        std::set<std::pair<int, int>> seen;
        for (const auto& s : g) seen.emplace(s.u, s.v);
        CHECK(seen.size() == g.size());
        const auto expected = oracle::group(k);
        CHECK(seen == std::set<std::pair<int, int>>(expected.begin(), expected.end()));
    }
}

TEST_CASE("lift_affine") {
    CHECK(lift_affine(AffineMap::identity(20), 60) == AffineMap::identity(60));
    const auto l = lift_affine(AffineMap::make(3, 5, 20), 60);
    CHECK(l.u == 23);
    CHECK(l.v == 5);
    CHECK(l.k == 60);
    CHECK_THROWS_AS(lift_affine(AffineMap::identity(7), 60), error);

    // Every lift candidate: unit mod n and congruent to u mod d.
    for (int d : {4, 8, 20}) {
        for (int n : {d, 3 * d, 5 * d}) {
            for (const auto& s : enumerate_group(d)) {
                const auto t = lift_affine(s, n);
                CHECK(std::gcd(t.u, n) == 1);
                CHECK(t.u % d == s.u);
                CHECK(t.v % d == s.v);
            }
        }
    }
}

TEST_CASE("lift commutes with compression") {
    std::mt19937_64 rng(13);
    for (auto [n, d] : {std::pair{60, 20}, {12, 4}, {24, 8}}) {
        for (int trial = 0; trial < 200; ++trial) {
            const auto s = random_map(rng, d);
            const auto x = oracle::random_ternary(rng, n);
            const auto lifted = cwsearch::apply(invert(lift_affine(s, n)), x);
            CHECK(compress(lifted, d).vec() == cwsearch::apply(invert(s), compress(x, d).entries()));
        }
    }
}

TEST_CASE("zero PAF is invariant under the group") {
    for (int d : {7, 8}) {
        const auto g = enumerate_group(d);
        for (const auto& row : oracle::cw_rows(d, 4)) {
            for (const auto& s : g) CHECK(is_paf_zero(cwsearch::apply(s, row)));
        }
    }
    for (const auto* b : {&oracle::B1, &oracle::B2, &oracle::B3}) {
        for (const auto& s : enumerate_group(20)) CHECK(is_paf_zero(cwsearch::apply(s, *b)));
    }
}

TEST_CASE("ColorOrder") {
    const auto o = ColorOrder::standard(3);
    CHECK(o.size() == 7);
    CHECK(o.value(0) == 0);
    CHECK(o.value(1) == 1);
    CHECK(o.value(2) == -1);
    CHECK(o.value(6) == -3);
    CHECK(o.rank(-2) == 4);
    CHECK_THROWS_AS(o.rank(4), error);
    CHECK(o.less(std::vector<int>{0, 1}, std::vector<int>{0, -1}));
    CHECK_FALSE(o.less(std::vector<int>{2, 0}, std::vector<int>{-1, 0}));
}

TEST_CASE("orbit_canonical") {
    const auto g20 = enumerate_group(20);
    const auto o3 = ColorOrder::standard(3);
    const std::vector<int> zeros(20, 0);
    CHECK(orbit_canonical(zeros, g20, o3) == zeros);
    CHECK(orbit_canonical(oracle::B1, g20, o3) == oracle::B1);

    const auto rep = orbit_canonical(oracle::B2, g20, o3);
    CHECK(rep == oracle::B2);
    for (const auto& s : g20) CHECK(orbit_canonical(cwsearch::apply(s, oracle::B2), g20, o3) == rep);
    CHECK(orbit_canonical(rep, g20, o3) == rep);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 11);
        const auto x = oracle::random_ternary(rng, k);
        const auto g = enumerate_group(k);
        CHECK(orbit_canonical(x, g, ColorOrder::standard(1)) == oracle::canonical(x));
    }
}
