#pragma once

#include <hlf/elements.hpp>
#include <gtest/gtest.h>

#include <utility>
#include <vector>

namespace hlf::test {

inline Piece piece(std::vector<Interval> box, ValueRule rule) { return Piece{Region{std::move(box)}, std::move(rule)}; }

inline ConstantRule constant(long long v) { return ConstantRule{ExtInt(v)}; }
inline ConstantRule pos_inf() { return ConstantRule{ExtInt::pos_inf()}; }
inline ConstantRule neg_inf() { return ConstantRule{ExtInt::neg_inf()}; }

inline AffineRule affine(std::vector<long long> coeffs, long long offset) {
    AffineRule a;
    for (auto c : coeffs) {
        a.coeffs.emplace_back(c);
    }
    a.offset = offset;
    return a;
}

inline LaurentElement elem(std::size_t d, const Integer& p, std::vector<std::pair<MultiIndex, Rational>> terms) {
    LaurentElement x(d, p);
    for (auto& [a, c] : terms) {
        x.add_term(a, c);
    }
    return x;
}

template <class F>
void expect_error(errc code, F&& f) {
    try {
        f();
        ADD_FAILURE() << "expected " << to_string(code);
    } catch (const error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

} // namespace hlf::test
