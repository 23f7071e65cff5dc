#include <hlf/elements.hpp>
#include <hlf/random.hpp>

#include <gtest/gtest.h>

#include <map>

#include "helpers.hpp"

using namespace hlf;
using test::elem;

namespace {

const Integer two = 2;
const Integer three = 3;

// Valuation by counting factors with machine integers.
long long count_factors(long long n, long long p) {
    long long k = 0;
    n = n < 0 ? -n : n;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

// Cauchy product by explicit double loop over coordinate vectors.
std::map<std::vector<long long>, Rational> brute_product(const LaurentElement& x, const LaurentElement& y) {
    std::map<std::vector<long long>, Rational> out;
    for (const auto& [a, c] : x.terms()) {
        for (const auto& [b, e] : y.terms()) {
            std::vector<long long> key;
            for (std::size_t i = 0; i < a.dim(); ++i) {
                key.push_back(static_cast<long long>(a[i] + b[i]));
            }
            out[key] += c * e;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

} // namespace

TEST(Valuation, Examples) {
    EXPECT_EQ(val_p(12, two), ExtInt(2));
    EXPECT_EQ(val_p(Rational(5, 9), three), ExtInt(-2));
    EXPECT_EQ(val_p(0, Integer(7)), ExtInt::pos_inf());
}

TEST(Valuation, MatchesFactorCount) {
    for (long long p : {2, 3, 5, 7}) {
        for (long long num = -200; num <= 200; num += 7) {
            for (long long den = 1; den <= 60; den += 3) {
                if (num == 0) {
                    continue;
                }
                const Rational c(num, den);
                const long long want = count_factors(static_cast<long long>(numerator(c)), p) -
                                       count_factors(static_cast<long long>(denominator(c)), p);
                EXPECT_EQ(val_p(c, Integer(p)), ExtInt(want)) << num << "/" << den << " p=" << p;
            }
        }
    }
}

TEST(Valuation, IsAValuation) {
    rnd::Engine e(31);
    const Integer p = 5;
    for (int k = 0; k < 1000; ++k) {
        const Rational a = rnd::unit_scaled(e, p, rnd::uniform(e, -5, 5));
        const Rational b = rnd::unit_scaled(e, p, rnd::uniform(e, -5, 5));
        EXPECT_EQ(val_p(a * b, p), val_p(a, p) + val_p(b, p));
        EXPECT_GE(val_p(a + b, p), min(val_p(a, p), val_p(b, p)));
        if (val_p(a, p) != val_p(b, p)) {
            EXPECT_EQ(val_p(a + b, p), min(val_p(a, p), val_p(b, p)));
        }
    }
}

TEST(Primes, Checks) {
    EXPECT_TRUE(is_prime(Integer(2)));
    EXPECT_TRUE(is_prime(Integer("170141183460469231731687303715884105727"))); // 2^127 − 1
    EXPECT_FALSE(is_prime(Integer(1)));
    EXPECT_FALSE(is_prime(Integer(91)));
    try {
        LaurentElement x(1, Integer(4));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_prime);
    }
}

TEST(Add, Examples) {
    const auto x = elem(1, two, {{{1}, 1}});
    EXPECT_EQ(x + x, elem(1, two, {{{1}, 2}}));
    EXPECT_TRUE((elem(1, two, {{{0}, 1}}) + elem(1, two, {{{0}, -1}})).is_zero());
    const auto s = elem(2, two, {{{1, 0}, Rational(1, 2)}}) + elem(2, two, {{{0, 1}, Rational(1, 3)}});
    EXPECT_EQ(s.terms().size(), 2u);
}

TEST(Add, Mismatches) {
    try {
        (void)(LaurentElement(1, two) + LaurentElement(1, three));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::prime_mismatch);
    }
    try {
        (void)(LaurentElement(1, two) + LaurentElement(2, two));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::dimension_mismatch);
    }
}

TEST(Mul, Examples) {
    const auto x = elem(1, two, {{{1}, 1}, {{2}, 1}});
    EXPECT_EQ(x * elem(1, two, {{{3}, 1}}), elem(1, two, {{{4}, 1}, {{5}, 1}}));
    EXPECT_EQ(elem(1, two, {{{0}, 2}}) * elem(1, two, {{{0}, 3}}), elem(1, two, {{{0}, 6}}));
    const auto a = elem(1, two, {{{0}, 1}, {{1}, 1}});
    const auto b = elem(1, two, {{{0}, 1}, {{1}, -1}});
    EXPECT_EQ(a * b, elem(1, two, {{{0}, 1}, {{2}, -1}}));
}

TEST(Mul, MatchesBruteForceAndRingLaws) {
    rnd::Engine e(32);
    for (int k = 0; k < 300; ++k) {
        const std::size_t d = 1 + k % 3;
        const Integer p = k % 2 == 0 ? two : three;
        const auto x = rnd::random_element(e, d, p);
        const auto y = rnd::random_element(e, d, p);
        const auto z = rnd::random_element(e, d, p);
        const auto xy = x * y;
        const auto want = brute_product(x, y);
        ASSERT_EQ(xy.terms().size(), want.size());
        for (const auto& [a, c] : xy.terms()) {
            std::vector<long long> key;
            for (const auto& v : a) {
                key.push_back(static_cast<long long>(v));
            }
            EXPECT_EQ(c, want.at(key));
        }
        EXPECT_EQ(xy, y * x);
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ(x * LaurentElement::one(d, p), x);
        EXPECT_TRUE((x - x).is_zero());
    }
}

TEST(ScalarMul, Examples) {
    const auto x = elem(1, two, {{{0}, 5}, {{3}, -1}});
    EXPECT_TRUE(scalar_mul(0, x).is_zero());
    EXPECT_EQ(scalar_mul(1, x), x);
    EXPECT_EQ(scalar_mul(Rational(1, 2), elem(1, two, {{{0}, 2}})), elem(1, two, {{{0}, 1}}));
}

TEST(Membership, Examples) {
    const NetSpec one = NetSpec::constant(1, 1);
    EXPECT_TRUE(element_in_net(elem(1, two, {{{0}, 2}}), one));
    EXPECT_FALSE(element_in_net(elem(1, two, {{{0}, 1}}), one));
    EXPECT_TRUE(element_in_net(LaurentElement(1, two), one));
}

TEST(Series, PartialSumExamples) {
    const Region support{{Interval::between(0, 5)}};
    const auto g = SeriesGenerator::constant(1, two, support, 1);
    EXPECT_EQ(partial_sum(g, {3}, support), elem(1, two, {{{0}, 1}, {{1}, 1}, {{2}, 1}, {{3}, 1}}));
    EXPECT_TRUE(partial_sum(g, {-1}, support).is_zero());
}

TEST(Series, PartialSumFollowsInverseLexOrder) {
    const Region square{{Interval::between(0, 1), Interval::between(0, 1)}};
    const auto g = SeriesGenerator::constant(2, two, square, 1);
    const auto s = partial_sum(g, {0, 1}, square);
    EXPECT_EQ(s, elem(2, two, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}}));

    // Oracle: rank points of the square with the last coordinate most
    // significant and keep those with rank at most that of a.
    rnd::Engine e(33);
    const Region box = Region::window(3, 2);
    const auto h = SeriesGenerator::constant(3, two, box, 1);
    auto rank = [](const MultiIndex& a) {
        long long r = 0;
        for (std::size_t i = a.dim(); i-- > 0;) {
            r = r * 5 + static_cast<long long>(a[i]) + 2;
        }
        return r;
    };
    for (int k = 0; k < 50; ++k) {
        const MultiIndex a = rnd::random_index(e, 3, 2);
        const auto part = partial_sum(h, a, box);
        std::size_t expected = 0;
        for_each_point(box, [&](const MultiIndex& b) {
            const bool in = rank(b) <= rank(a);
            expected += in ? 1 : 0;
            EXPECT_EQ(part.coefficient(b), in ? Rational(1) : Rational(0));
        });
        EXPECT_EQ(part.terms().size(), expected);
    }
}

TEST(Series, ValuationNetMatchesCoefficients) {
    rnd::Engine e(34);
    for (int k = 0; k < 100; ++k) {
        const std::size_t d = 1 + k % 3;
        const Integer p = k % 2 == 0 ? two : three;
        Region support;
        GeometricRule rule{rnd::unit_scaled(e, p, rnd::uniform(e, -2, 2)), {}, rnd::uniform(e, -2, 2)};
        for (std::size_t c = 0; c < d; ++c) {
            const long long lo = rnd::uniform(e, -3, 0);
            support.box.push_back(rnd::chance(e, 50) ? Interval::at_least(lo) : Interval::between(lo, lo + 3));
            rule.exponent.emplace_back(rnd::uniform(e, -2, 2));
        }
        const SeriesGenerator g(d, p, support, rule);
        const NetSpec v = g.valuation_net();
        ASSERT_TRUE(validate_partition(v).ok());
        for_each_point(Region::window(d, 4), [&](const MultiIndex& a) {
            EXPECT_EQ(net_eval(v, a), val_p(g.coefficient(a), p));
        });
    }
}

TEST(Series, WellFormedness) {
    // p^{−i} on i ≥ 0 has valuations −i, unbounded below: not an element of
    // K{{t}}, while p^{i} on i ≥ 0 is.
    const Region half{{Interval::at_least(0)}};
    const SeriesGenerator bad(1, two, half, GeometricRule{1, {Integer(-1)}, 0});
    const SeriesGenerator good(1, two, half, GeometricRule{1, {Integer(1)}, 0});
    EXPECT_FALSE(bad.well_formed(FieldShape{2, 1}));
    EXPECT_TRUE(good.well_formed(FieldShape{2, 1}));
    // in K((t)) any support bounded below is fine
    EXPECT_TRUE(bad.well_formed(FieldShape{2, 0}));
    // a support unbounded below is never an element of K((t))
    const SeriesGenerator left(1, two, Region{{Interval::at_most(0)}}, GeometricRule{1, {Integer(0)}, 0});
    EXPECT_FALSE(left.well_formed(FieldShape{2, 0}));
}

TEST(Series, TableRule) {
    TableRule t;
    t.values[MultiIndex{1}] = Rational(3, 4);
    t.values[MultiIndex{2}] = 12;
    const SeriesGenerator g(1, two, Region{{Interval::between(0, 3)}}, t);
    EXPECT_EQ(g.coefficient({1}), Rational(3, 4));
    EXPECT_EQ(g.coefficient({0}), 0);
    EXPECT_EQ(net_eval(g.valuation_net(), {2}), ExtInt(2));
    EXPECT_EQ(net_eval(g.valuation_net(), {0}), ExtInt::pos_inf());
    EXPECT_EQ(g.truncate(Region::window(1, 5)), elem(1, two, {{{1}, Rational(3, 4)}, {{2}, 12}}));
}
