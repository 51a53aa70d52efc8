#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pfq/oracle.hpp"

using namespace pfq;

namespace {
const HParams kExample{{make_rational(1, 3), make_rational(4, 3)},
                       {make_rational(2, 3), Rational(1)}};
}

TEST_CASE("coefficients") {
    auto c = oracle::coefficients(kExample, 3);
    CHECK(c == std::vector<Rational>{Rational(1), make_rational(2, 3),
                                     make_rational(28, 45)});
    CHECK(oracle::coefficients(kExample, 1) == std::vector<Rational>{Rational(1)});
    HParams half{{make_rational(1, 2)}, {Rational(1)}};
    auto ch = oracle::coefficients(half, 3);
    CHECK(ch == std::vector<Rational>{Rational(1), make_rational(1, 2),
                                      make_rational(3, 8)});
    CHECK(oracle::coefficients(half, 0).empty());
}

TEST_CASE("valuation profile matches direct coefficients") {
    std::mt19937 rng(5301);
    std::uniform_int_distribution<long> num(1, 30), den(1, 10);
    for (int trial = 0; trial < 10; ++trial) {
        HParams hp;
        for (int i = 0; i < 2; ++i)
            hp.top.push_back(make_rational(Int(num(rng)), Int(den(rng))));
        hp.bottom.push_back(make_rational(Int(num(rng)), Int(den(rng))));
        auto coeffs = oracle::coefficients(hp, 120);
        for (long p : {2, 5, 13}) {
            auto prof = oracle::valuation_profile(hp, p, 120);
            for (size_t k = 0; k < coeffs.size(); ++k)
                CHECK(prof[k] == valp(coeffs[k], p));
        }
    }
}

TEST_CASE("truncated profile") {
    auto [v7, k7] = oracle::truncated_profile(kExample, 7, Rational(0), 2000);
    CHECK(v7 == 0);
    CHECK(k7 == 0);

    auto [v11, k11] = oracle::truncated_profile(kExample, 11, Rational(0), 2000);
    CHECK(v11 <= -2);

    auto [ve, ke] = oracle::truncated_profile(HParams{}, 5, Rational(0), 100);
    CHECK(ve == 0);
    CHECK(ke == 0);
}

TEST_CASE("valp_via_zigzag examples") {
    CHECK(oracle::valp_via_zigzag(kExample, 7, 3) == 2);
    CHECK(oracle::valp_via_zigzag(kExample, 7, 0) == 0);
    CHECK(oracle::valp_via_zigzag(kExample, 11, 4) == -1);
}
