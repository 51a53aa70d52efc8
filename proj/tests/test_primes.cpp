#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pfq/primes.hpp"

using namespace pfq;

namespace {

const HParams kExample{{make_rational(1, 3), make_rational(4, 3)},
                       {make_rational(2, 3), Rational(1)}};
const HParams kHalf{{make_rational(1, 2)}, {Rational(1)}};

}  // namespace

TEST_CASE("pair gap bound") {
    CHECK(pair_gap_bound(kExample) == 3);
    CHECK(pair_gap_bound(kHalf) == 1);
    CHECK(pair_gap_bound(HParams{}) == 0);
}

TEST_CASE("representative primes") {
    CHECK(representative_prime(1, 3, 3) == 7);
    CHECK(representative_prime(2, 3, 3) == 5);
    CHECK(representative_prime(0, 1, 0) == 2);
    CHECK(representative_prime(1, 2, 1) == 3);
}

TEST_CASE("worked example set") {
    GoodReductionSet s = good_reduction_set(kExample, true);
    CHECK(!s.empty);
    CHECK(s.modulus == 3);
    CHECK(s.bound == 3);
    CHECK(s.good_classes == std::vector<Int>{1});
    CHECK(is_good_prime(s, 7));
    CHECK(!is_good_prime(s, 11));
    CHECK(!is_good_prime(s, 3));
}

TEST_CASE("central binomial set") {
    GoodReductionSet s = good_reduction_set(kHalf, true);
    CHECK(s.modulus == 2);
    CHECK(s.bound == 1);
    CHECK(s.small_good.empty());  // 2 itself has bad reduction
    CHECK(s.good_classes == std::vector<Int>{1});
    for (long p = 3; p < 100; p += 2)
        if (is_prime(Int(p))) CHECK(is_good_prime(s, p));
    CHECK(!is_good_prime(s, 2));
}

TEST_CASE("more bottom than top parameters never reduce well") {
    HParams hp{{make_rational(1, 2)}, {Rational(1), Rational(1)}};
    GoodReductionSet s = good_reduction_set(hp);
    CHECK(s.empty);
    CHECK(s.empty_reason == "m>n");
    CHECK(!is_good_prime(s, 5));
}

TEST_CASE("membership agrees with the per-prime test below 100") {
    std::mt19937 rng(9901);
    std::uniform_int_distribution<int> nd(0, 2), md(0, 2);
    std::uniform_int_distribution<long> num(1, 20), den(1, 8);
    int instances = 0;
    while (instances < 10) {
        HParams hp;
        int n = nd(rng), m = md(rng);
        for (int i = 0; i < n; ++i)
            hp.top.push_back(make_rational(Int(num(rng)), Int(den(rng))));
        for (int j = 0; j < m; ++j)
            hp.bottom.push_back(make_rational(Int(num(rng)), Int(den(rng))));
        if (has_nonpositive_integer(hp)) continue;
        ++instances;
        GoodReductionSet s = good_reduction_set(hp, true);
        for (long p = 2; p < 100; ++p) {
            if (!is_prime(Int(p))) continue;
            bool direct = has_good_reduction(hp, p).first;
            if (s.empty)
                CHECK(!direct);
            else
                CHECK(is_good_prime(s, p) == direct);
        }
    }
}
