#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "polar/code.hpp"

using namespace polar;
using oracle::Vec;

TEST_CASE("new_code validation") {
    const PolarCodeSpec rm43 = new_code(2, {0});
    CHECK(rm43.k == 3);
    CHECK(rm43.n == 4);
    CHECK(new_code(2, {}).k == 4);
    CHECK_THROWS_AS(new_code(2, {0, 4}), std::invalid_argument);
    CHECK_THROWS_AS(new_code(2, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(new_code(0, {}), std::invalid_argument);
    CHECK(rm43.is_frozen(0));
    CHECK_FALSE(rm43.is_frozen(1));
    CHECK(rm43.unfrozen() == std::vector<int>{1, 2, 3});
}

TEST_CASE("bec construction") {
    CHECK(frozen_bec(2, 2, 0.5) == std::vector<int>{0, 1});
    CHECK(frozen_bec(2, 4, 0.5).empty());
    CHECK(frozen_bec(2, 3, 0.5) == std::vector<int>{0});
    CHECK_THROWS_AS(frozen_bec(2, 2, 1.5), std::invalid_argument);

    const auto z = bec_bhattacharyya(2, 0.5);
    CHECK(z[0] == doctest::Approx(0.9375));
    CHECK(z[1] == doctest::Approx(0.5625));
    CHECK(z[2] == doctest::Approx(0.4375));
    CHECK(z[3] == doctest::Approx(0.0625));
    // agree with the independent per-index recursion
    for (int m = 1; m <= 8; ++m) {
        const auto zs = bec_bhattacharyya(m, 0.3);
        for (int i = 0; i < (1 << m); ++i)
            CHECK(zs[i] == doctest::Approx(oracle::bec_z(m, i, 0.3)));
    }
}

TEST_CASE("rm construction") {
    CHECK(frozen_rm(2, 3) == std::vector<int>{0});
    CHECK(frozen_rm(2, 1) == std::vector<int>{0, 1, 2});
    CHECK(frozen_rm(2, 4).empty());
    CHECK(frozen_rm(3, 4) == std::vector<int>{0, 1, 2, 4});  // weights 1,2,2,4,2,4,4,8
}

TEST_CASE("generator and parity check") {
    const PolarCodeSpec rm43 = new_code(2, {0});
    const BitMatrix g = generator(rm43);
    CHECK(g.rows() == 3);
    for (int r = 0; r < 3; ++r)
        for (int j = 0; j < 4; ++j) CHECK(g.get(r, j) == f_matrix(2).get(r + 1, j));

    const BitMatrix h = parity_check(rm43);
    CHECK(h.rows() == 1);
    CHECK(mul_vec_mat({1, 0, 0, 0}, h.transposed()) == Vec{1});
    for (int j = 0; j < 4; ++j) CHECK(h.get(0, j));

    CHECK(generator(new_code(2, {0, 1, 2, 3})).rows() == 0);
    CHECK(parity_check(new_code(1, {})).rows() == 0);
    CHECK(generator(new_code(1, {})) == f_matrix(1));

    const BitMatrix h2 = parity_check(new_code(2, {0, 1}));
    CHECK(h2.get(0, 0)); CHECK(h2.get(0, 1)); CHECK(h2.get(0, 2)); CHECK(h2.get(0, 3));
    CHECK_FALSE(h2.get(1, 0)); CHECK(h2.get(1, 1)); CHECK_FALSE(h2.get(1, 2)); CHECK(h2.get(1, 3));
    CHECK(mul(generator(new_code(2, {0, 1})), h2.transposed()).is_zero());
}

TEST_CASE("is_codeword") {
    const PolarCodeSpec rm43 = new_code(2, {0});
    CHECK(is_codeword({0, 0, 0, 0}, rm43));
    CHECK(is_codeword({1, 1, 0, 0}, rm43));
    CHECK_FALSE(is_codeword({1, 0, 0, 0}, rm43));
    CHECK_THROWS_AS(is_codeword({0, 0}, rm43), std::invalid_argument);
    CHECK(is_codeword({1, 0}, new_code(1, {})));  // rate-1: everything passes
}

TEST_CASE("dual code") {
    const DualCode d = dual(new_code(2, {0}));
    CHECK(d.code.frozen == std::vector<int>{0, 1, 2});
    CHECK(d.coordinate_reversal);
    // spans exactly the repetition code
    const auto words = oracle::span(parity_check(new_code(2, {0})));
    CHECK(words == std::set<Vec>{{0, 0, 0, 0}, {1, 1, 1, 1}});

    const DualCode rate1 = dual(new_code(2, {}));
    CHECK(rate1.code.k == 0);
}

TEST_CASE("dual of dual restores the codeword set") {
    // exhaustive at m = 2 over all 16 frozen subsets
    for (int mask = 0; mask < 16; ++mask) {
        std::vector<int> frozen;
        for (int i = 0; i < 4; ++i)
            if (mask >> i & 1) frozen.push_back(i);
        const PolarCodeSpec c = new_code(2, frozen);
        const PolarCodeSpec dd = dual(dual(c).code).code;
        // both duals flip coordinates, so the two reversals cancel
        CHECK(oracle::span(generator(c)) == oracle::span(generator(dd)));
    }
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 64; ++trial) {
        const auto frozen = oracle::random_frozen(8, int(rng() % 9), rng);
        const PolarCodeSpec c = new_code(3, frozen);
        CHECK(oracle::span(generator(c)) ==
              oracle::span(generator(dual(dual(c).code).code)));
    }
}

TEST_CASE("dual frozen-set formula matches the orthogonal complement") {
    std::mt19937_64 rng(9);
    for (int m = 2; m <= 3; ++m) {
        const int n = 1 << m;
        for (int trial = 0; trial < 32; ++trial) {
            const PolarCodeSpec c = new_code(m, oracle::random_frozen(n, int(rng() % (n + 1)), rng));
            // direct complement: all words orthogonal to every generator row
            const auto cw = oracle::span(generator(c));
            std::set<Vec> comp;
            for (int mask = 0; mask < (1 << n); ++mask) {
                Vec x(n);
                for (int i = 0; i < n; ++i) x[i] = mask >> i & 1;
                bool ortho = true;
                for (const auto& w : cw) {
                    int dot = 0;
                    for (int i = 0; i < n; ++i) dot ^= x[i] & w[i];
                    if (dot) { ortho = false; break; }
                }
                if (ortho) comp.insert(x);
            }
            // dual code on reversed coordinates
            std::set<Vec> via_dual;
            for (const auto& w : oracle::span(generator(dual(c).code)))
                via_dual.insert(oracle::reversed(w));
            CHECK(via_dual == comp);
        }
    }
}

TEST_CASE("rank and dimension identities") {
    std::mt19937_64 rng(2);
    for (int m = 2; m <= 6; ++m) {
        const int n = 1 << m;
        for (int trial = 0; trial < 10; ++trial) {
            const PolarCodeSpec c = new_code(m, oracle::random_frozen(n, int(rng() % (n + 1)), rng));
            CHECK(oracle::rank(generator(c)) == c.k);
            CHECK(oracle::rank(parity_check(c)) == n - c.k);
            CHECK(c.k + dual(c).code.k == n);
            CHECK(mul(generator(c), parity_check(c).transposed()).is_zero());
        }
    }
}

TEST_CASE("span equals parity kernel at small m") {
    for (int m = 2; m <= 3; ++m) {
        const int n = 1 << m;
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 16; ++trial) {
            const PolarCodeSpec c = new_code(m, oracle::random_frozen(n, int(rng() % (n + 1)), rng));
            const auto cw = oracle::span(generator(c));
            std::set<Vec> kernel;
            for (int mask = 0; mask < (1 << n); ++mask) {
                Vec x(n);
                for (int i = 0; i < n; ++i) x[i] = mask >> i & 1;
                if (is_codeword(x, c)) kernel.insert(x);
            }
            CHECK(cw == kernel);
        }
    }
}

TEST_CASE("systematic partition identities") {
    std::mt19937_64 rng(4);
    for (int m = 2; m <= 8; ++m) {
        const int n = 1 << m;
        for (int trial = 0; trial < 10; ++trial) {
            const PolarCodeSpec c = new_code(m, oracle::random_frozen(n, int(rng() % (n + 1)), rng));
            const SystematicPartition p = systematic_partition(c);
            CHECK(mul(p.g_u, p.h_u.transposed()).is_zero());
            CHECK(p.g_f.rows() == std::size_t(n - c.k));
            CHECK(p.g_u.rows() == std::size_t(c.k));
            CHECK(p.pi.size() == std::size_t(n));
        }
    }
}

TEST_CASE("json round trip") {
    const PolarCodeSpec c = new_code(3, frozen_bec(3, 4, 0.5), "bec:0.5");
    const PolarCodeSpec back = code_from_json(to_json(c));
    CHECK(back.m == c.m);
    CHECK(back.k == c.k);
    CHECK(back.frozen == c.frozen);
    CHECK(back.construction == "bec:0.5");
}
