#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "polar/codec.hpp"

using namespace polar;
using oracle::Vec;

namespace {

std::vector<double> noiseless(const Vec& word) {
    std::vector<double> llrs(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) llrs[i] = word[i] ? -kLlrClip : kLlrClip;
    return llrs;
}

Vec info_of(std::uint64_t mask, int k) {
    Vec v(k);
    for (int i = 0; i < k; ++i) v[i] = mask >> i & 1;
    return v;
}

}  // namespace

TEST_CASE("non-systematic encoding") {
    const PolarCodeSpec rm43 = new_code(2, {0});
    CHECK(encode(rm43, {1, 0, 0}) == Vec{1, 1, 0, 0});
    CHECK(encode(rm43, {0, 0, 0}) == Vec{0, 0, 0, 0});
    CHECK(encode(new_code(1, {}), {1, 1}) == Vec{0, 1});
    CHECK_THROWS_AS(encode(rm43, {1, 0}), std::invalid_argument);
}

TEST_CASE("polar transform is an involution") {
    std::mt19937_64 rng(3);
    for (int m = 1; m <= 6; ++m) {
        Vec x = oracle::random_word(1 << m, rng);
        Vec y = x;
        polar_transform(y);
        CHECK(y == mul_vec_mat(x, f_matrix(m)));
        polar_transform(y);
        CHECK(y == x);
    }
}

TEST_CASE("systematic encoding") {
    const PolarCodeSpec rm43 = new_code(2, {0});
    CHECK(systematic_encode(rm43, {1, 0, 1}) == Vec{0, 1, 0, 1});
    CHECK(systematic_encode(rm43, {0, 0, 0}) == Vec{0, 0, 0, 0});
    CHECK(systematic_encode(rm43, {1, 1, 1}) == Vec{1, 1, 1, 1});
    CHECK_THROWS_AS(systematic_encode(rm43, {1}), std::invalid_argument);

    std::mt19937_64 rng(8);
    for (int m = 2; m <= 6; ++m) {
        const int n = 1 << m;
        for (int trial = 0; trial < 20; ++trial) {
            const PolarCodeSpec c = new_code(m, oracle::random_frozen(n, int(rng() % (n + 1)), rng));
            const Vec v = oracle::random_word(c.k, rng);
            const Vec x = systematic_encode(c, v);
            CHECK(is_codeword(x, c));
            const auto unfrozen = c.unfrozen();
            for (int i = 0; i < c.k; ++i) CHECK(x[unfrozen[i]] == v[i]);
        }
    }
}

TEST_CASE("systematic and plain encodings span the same code") {
    for (int m = 2; m <= 3; ++m) {
        const int n = 1 << m;
        std::mt19937_64 rng(21);
        for (int trial = 0; trial < 8; ++trial) {
            const PolarCodeSpec c = new_code(m, oracle::random_frozen(n, int(rng() % (n + 1)), rng));
            std::set<Vec> plain, sys;
            for (std::uint64_t mask = 0; mask < (1ULL << c.k); ++mask) {
                plain.insert(encode(c, info_of(mask, c.k)));
                sys.insert(systematic_encode(c, info_of(mask, c.k)));
            }
            CHECK(plain == sys);
        }
    }
}

TEST_CASE("round trip through extract_info") {
    std::mt19937_64 rng(14);
    for (int m = 1; m <= 4; ++m) {
        const int n = 1 << m;
        for (int trial = 0; trial < 20; ++trial) {
            const PolarCodeSpec c = new_code(m, oracle::random_frozen(n, int(rng() % (n + 1)), rng));
            const Vec v = oracle::random_word(c.k, rng);
            CHECK(extract_info(c, encode(c, v)) == v);
        }
    }
}

TEST_CASE("hard decisions") {
    CHECK(hard_decision({3.2, -0.1}) == Vec{0, 1});
    CHECK(hard_decision({0.0}) == Vec{0});
    CHECK(hard_decision(noiseless({1, 0, 1, 1})) == Vec{1, 0, 1, 1});
}

TEST_CASE("sc decoding examples") {
    CHECK(sc_decode(new_code(1, {}), noiseless({0, 1})).info_bits == Vec{1, 1});
    const PolarCodeSpec rep = new_code(2, {0, 1, 2});
    const DecodeResult r = sc_decode(rep, {kLlrClip, 0.0, 0.0, 0.0});
    CHECK(r.bits == Vec{0, 0, 0, 0});
    CHECK(r.converged);
    CHECK_THROWS_AS(sc_decode(rep, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("noiseless recovery, exhaustive at small m") {
    for (int m = 1; m <= 3; ++m) {
        const int n = 1 << m;
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<int> frozen;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) frozen.push_back(i);
            const PolarCodeSpec c = new_code(m, frozen);
            for (std::uint64_t im = 0; im < (1ULL << c.k); ++im) {
                const Vec v = info_of(im, c.k);
                const Vec x = encode(c, v);
                const auto llrs = noiseless(x);

                CHECK(sc_decode(c, llrs).bits == x);
                const DecodeResult g = bp_decode_g(c, llrs);
                CHECK(g.bits == x);
                CHECK(g.converged);
                const DecodeResult h = bp_decode_h(c, llrs);
                CHECK(h.bits == x);
                CHECK(h.converged);
                CHECK(h.info_bits == v);
            }
        }
    }
}

TEST_CASE("noiseless recovery, random codes at m = 4..6") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 4 + int(rng() % 3);
        const int n = 1 << m;
        const PolarCodeSpec c = new_code(m, oracle::random_frozen(n, int(rng() % (n + 1)), rng));
        const Vec v = oracle::random_word(c.k, rng);
        const Vec x = encode(c, v);
        const auto llrs = noiseless(x);
        CHECK(sc_decode(c, llrs).bits == x);
        CHECK(bp_decode_g(c, llrs).bits == x);
        CHECK(bp_decode_h(c, llrs).bits == x);
        CHECK(bp_decode_h(c, llrs, Schedule::stage_sweep).bits == x);
    }
}

TEST_CASE("bp specifics") {
    const PolarCodeSpec rm43 = new_code(2, {0});
    // noiseless single-check code converges fast
    const DecodeResult h = bp_decode_h(rm43, noiseless({1, 1, 0, 0}));
    CHECK(h.converged);
    CHECK(h.iterations <= 2);

    // total erasure cannot certify anything
    CHECK_FALSE(bp_decode_g(rm43, {0, 0, 0, 0}).converged);
    CHECK_FALSE(bp_decode_h(rm43, {0, 0, 0, 0}).converged);

    // rate-1 H decoding: no terminal checks, channel hard decisions
    const DecodeResult r1 = bp_decode_h(new_code(2, {}), noiseless({1, 0, 1, 1}));
    CHECK(r1.bits == Vec{1, 0, 1, 1});
    CHECK(r1.converged);

    CHECK_THROWS_AS(bp_decode_g(rm43, noiseless({0, 0, 0, 0}), Schedule::flooding, 0),
                    std::invalid_argument);
}

TEST_CASE("bp erasure propagation on the repetition code") {
    const PolarCodeSpec rep = new_code(2, {0, 1, 2});
    // one surviving coordinate pins the other three
    for (int known = 0; known < 4; ++known) {
        for (int bit = 0; bit < 2; ++bit) {
            std::vector<double> llrs(4, 0.0);
            llrs[known] = bit ? -kLlrClip : kLlrClip;
            const Vec expect(4, std::uint8_t(bit));
            const DecodeResult g = bp_decode_g(rep, llrs);
            CHECK(g.bits == expect);
            CHECK(g.converged);
            const DecodeResult h = bp_decode_h(rep, llrs);
            CHECK(h.bits == expect);
            CHECK(h.converged);
        }
    }
}

TEST_CASE("bp-h certificate is sound under erasures") {
    std::mt19937_64 rng(51);
    const PolarCodeSpec c = new_code(4, frozen_bec(4, 8, 0.4), "bec:0.4");
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const Vec v = oracle::random_word(c.k, rng);
        const Vec x = encode(c, v);
        auto llrs = noiseless(x);
        for (auto& l : llrs)
            if (u(rng) < 0.4) l = 0.0;
        const DecodeResult h = bp_decode_h(c, llrs);
        if (h.converged) {
            CHECK(is_codeword(h.bits, c));
            CHECK(h.bits == x);  // BEC: no wrong certainties possible
        }
    }
}

TEST_CASE("schedules are deterministic and agree on fixed points") {
    const PolarCodeSpec c = new_code(3, frozen_bec(3, 4, 0.5), "bec:0.5");
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> llrs(8);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        for (auto& l : llrs) l = u(rng);
        const DecodeResult a = bp_decode_g(c, llrs);
        const DecodeResult b = bp_decode_g(c, llrs);
        CHECK(a.bits == b.bits);
        CHECK(a.iterations == b.iterations);
        const DecodeResult s1 = bp_decode_g(c, llrs, Schedule::stage_sweep);
        const DecodeResult s2 = bp_decode_g(c, llrs, Schedule::stage_sweep);
        CHECK(s1.bits == s2.bits);
    }
}

TEST_CASE("sign symmetry when the all-ones word is in the code") {
    const PolarCodeSpec c = new_code(3, {0, 1, 2, 4});  // RM(8,4), contains 11111111
    const Vec ones(8, 1);
    CHECK(is_codeword(ones, c));
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        const Vec v = oracle::random_word(c.k, rng);
        const Vec x = encode(c, v);
        Vec xc = x;
        for (auto& b : xc) b ^= 1;
        auto llrs = noiseless(x);
        auto flipped = llrs;
        for (auto& l : flipped) l = -l;
        const DecodeResult a = bp_decode_h(c, llrs);
        const DecodeResult b = bp_decode_h(c, flipped);
        CHECK(a.bits == x);
        CHECK(b.bits == xc);
        CHECK(a.converged == b.converged);
    }
}

TEST_CASE("boxplus and clipping") {
    CHECK(boxplus(kLlrClip, kLlrClip) > 0.0);
    CHECK(boxplus(kLlrClip, -kLlrClip) < 0.0);
    CHECK(boxplus(5.0, 0.0) == doctest::Approx(0.0));
    CHECK(clip_llr(1000.0) == kLlrClip);
    CHECK(clip_llr(-1000.0) == -kLlrClip);
    CHECK(clip_llr(1.5) == 1.5);
}
