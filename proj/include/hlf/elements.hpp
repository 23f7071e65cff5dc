#pragma once

// Finitely supported elements x = Σ x(α) t^α of F with exact rational
// coefficients, K = Q_p.

#include <hlf/classify.hpp>
#include <hlf/nets.hpp>

#include <boost/multiprecision/miller_rabin.hpp>

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hlf {

inline bool is_prime(const Integer& p) {
    if (p < 2) {
        return false;
    }
    return boost::multiprecision::miller_rabin_test(p, 25);
}

inline void require_prime(const Integer& p) {
    if (!is_prime(p)) {
        throw error(errc::not_prime, p.str() + " is not a prime");
    }
}

/// Multiplicity of p in a nonzero integer.
inline Integer multiplicity(Integer n, const Integer& p) {
    Integer k = 0;
    if (n < 0) {
        n = -n;
    }
    while (n != 0 && n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

/// p-adic valuation of a rational; val_p(0) = +∞.
inline ExtInt val_p(const Rational& c, const Integer& p) {
    if (c == 0) {
        return ExtInt::pos_inf();
    }
    return ExtInt(Integer(multiplicity(numerator(c), p) - multiplicity(denominator(c), p)));
}

/// p^k for any integer k.
inline Rational p_power(const Integer& p, const Integer& k) {
    const Integer base = boost::multiprecision::pow(p, static_cast<unsigned>(k < 0 ? Integer(-k) : k));
    return k < 0 ? Rational(Integer(1), base) : Rational(base);
}

class LaurentElement {
public:
    using Terms = std::map<MultiIndex, Rational, InvLexLess>;

    /// The zero element.
    LaurentElement(std::size_t dim, Integer prime) : dim_(dim), prime_(std::move(prime)) {
        if (dim_ == 0) {
            throw error(errc::invalid_argument, "elements need dimension at least 1");
        }
        require_prime(prime_);
    }

    static LaurentElement monomial(std::size_t dim, const Integer& prime, const MultiIndex& alpha, const Rational& c) {
        LaurentElement x(dim, prime);
        x.add_term(alpha, c);
        return x;
    }

    static LaurentElement one(std::size_t dim, const Integer& prime) {
        return monomial(dim, prime, MultiIndex::zero(dim), Rational(1));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const Integer& prime() const noexcept { return prime_; }
    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

    [[nodiscard]] Rational coefficient(const MultiIndex& alpha) const {
        check_index(alpha);
        const auto it = terms_.find(alpha);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// x(α) += c, dropping the term if it cancels.
    void add_term(const MultiIndex& alpha, const Rational& c) {
        check_index(alpha);
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(alpha, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    /// Smallest box containing the support; nullopt for zero.
    [[nodiscard]] std::optional<Region> support_box() const {
        if (terms_.empty()) {
            return std::nullopt;
        }
        Region box;
        const auto& first = terms_.begin()->first;
        for (std::size_t c = 0; c < dim_; ++c) {
            box.box.push_back(Interval::point(first[c]));
        }
        for (const auto& [alpha, coeff] : terms_) {
            for (std::size_t c = 0; c < dim_; ++c) {
                *box.box[c].lo = std::min(*box.box[c].lo, alpha[c]);
                *box.box[c].hi = std::max(*box.box[c].hi, alpha[c]);
            }
        }
        return box;
    }

    friend bool operator==(const LaurentElement&, const LaurentElement&) = default;

private:
    void check_index(const MultiIndex& alpha) const {
        if (alpha.dim() != dim_) {
            throw error(errc::dimension_mismatch,
                        "index " + alpha.to_string() + " in an element of dimension " + std::to_string(dim_));
        }
    }

    std::size_t dim_;
    Integer prime_;
    Terms terms_;
};

inline void require_compatible(const LaurentElement& x, const LaurentElement& y) {
    if (x.dim() != y.dim()) {
        throw error(errc::dimension_mismatch,
                    "elements of dimension " + std::to_string(x.dim()) + " and " + std::to_string(y.dim()));
    }
    if (x.prime() != y.prime()) {
        throw error(errc::prime_mismatch, "elements over Q_" + x.prime().str() + " and Q_" + y.prime().str());
    }
}

inline LaurentElement add(const LaurentElement& x, const LaurentElement& y) {
    require_compatible(x, y);
    LaurentElement out = x;
    for (const auto& [alpha, c] : y.terms()) {
        out.add_term(alpha, c);
    }
    return out;
}

inline LaurentElement scalar_mul(const Rational& c, const LaurentElement& x) {
    LaurentElement out(x.dim(), x.prime());
    if (c == 0) {
        return out;
    }
    for (const auto& [alpha, coeff] : x.terms()) {
        out.add_term(alpha, c * coeff);
    }
    return out;
}

/// Cauchy product: (xy)(α) = Σ_{β+γ=α} x(β) y(γ).
inline LaurentElement mul(const LaurentElement& x, const LaurentElement& y) {
    require_compatible(x, y);
    LaurentElement out(x.dim(), x.prime());
    for (const auto& [beta, a] : x.terms()) {
        for (const auto& [gamma, b] : y.terms()) {
            out.add_term(beta + gamma, a * b);
        }
    }
    return out;
}

inline LaurentElement operator+(const LaurentElement& x, const LaurentElement& y) { return add(x, y); }
inline LaurentElement operator-(const LaurentElement& x) { return scalar_mul(Rational(-1), x); }
inline LaurentElement operator-(const LaurentElement& x, const LaurentElement& y) { return add(x, -y); }
inline LaurentElement operator*(const LaurentElement& x, const LaurentElement& y) { return mul(x, y); }
inline LaurentElement operator*(const Rational& c, const LaurentElement& x) { return scalar_mul(c, x); }

/// x ∈ Σ p^{net(α)} t^α, i.e. val_p(x(α)) ≥ net(α) on the support.
inline bool element_in_net(const LaurentElement& x, const NetSpec& net) {
    if (x.dim() != net.dim) {
        throw error(errc::dimension_mismatch, "element and net dimensions differ");
    }
    for (const auto& [alpha, c] : x.terms()) {
        if (val_p(c, x.prime()) < net_eval(net, alpha)) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Series generators

/// α ↦ scale · p^{exponent·α + offset}
struct GeometricRule {
    Rational scale;
    std::vector<Integer> exponent;
    Integer offset;
};

/// Explicit coefficients over a finite support.
struct TableRule {
    std::map<MultiIndex, Rational, InvLexLess> values;
};

/// Boxes partitioning Z^d \ box.
inline std::vector<Region> complement(const Region& box) {
    std::vector<Region> out;
    const std::size_t d = box.dim();
    for (std::size_t c = 0; c < d; ++c) {
        Region base;
        for (std::size_t k = 0; k < d; ++k) {
            base.box.push_back(k < c ? box.box[k] : Interval::all());
        }
        if (box.box[c].lo) {
            Region below = base;
            below.box[c] = Interval::at_most(Integer(*box.box[c].lo - 1));
            out.push_back(std::move(below));
        }
        if (box.box[c].hi) {
            Region above = base;
            above.box[c] = Interval::at_least(Integer(*box.box[c].hi + 1));
            out.push_back(std::move(above));
        }
    }
    return out;
}

/// A possibly infinite series given by a coefficient rule on a support box.
/// Only window truncations are ever materialized.
class SeriesGenerator {
public:
    using Rule = std::variant<GeometricRule, TableRule>;

    SeriesGenerator(std::size_t dim, Integer prime, Region support, Rule rule)
        : dim_(dim), prime_(std::move(prime)), support_(std::move(support)), rule_(std::move(rule)) {
        require_prime(prime_);
        if (support_.dim() != dim_ || support_.empty()) {
            throw error(errc::dimension_mismatch, "support must be a nonempty box of the generator's dimension");
        }
        if (const auto* g = std::get_if<GeometricRule>(&rule_); g && g->exponent.size() != dim_) {
            throw error(errc::dimension_mismatch, "exponent rule has the wrong arity");
        }
        if (const auto* t = std::get_if<TableRule>(&rule_)) {
            if (!support_.finite()) {
                throw error(errc::invalid_argument, "table generators need a finite support box");
            }
            for (const auto& [alpha, c] : t->values) {
                if (alpha.dim() != dim_ || !support_.contains(alpha)) {
                    throw error(errc::invalid_argument, "table entry " + alpha.to_string() + " outside the support");
                }
            }
        }
    }

    /// g ≡ c on the support.
    static SeriesGenerator constant(std::size_t dim, const Integer& prime, Region support, const Rational& c) {
        return {dim, prime, std::move(support), GeometricRule{c, std::vector<Integer>(dim, Integer(0)), 0}};
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const Integer& prime() const noexcept { return prime_; }
    [[nodiscard]] const Region& support() const noexcept { return support_; }
    [[nodiscard]] const Rule& rule() const noexcept { return rule_; }

    [[nodiscard]] Rational coefficient(const MultiIndex& alpha) const {
        if (alpha.dim() != dim_) {
            throw error(errc::dimension_mismatch, "index " + alpha.to_string() + " for a generator of dimension " +
                                                      std::to_string(dim_));
        }
        if (!support_.contains(alpha)) {
            return 0;
        }
        if (const auto* g = std::get_if<GeometricRule>(&rule_)) {
            return g->scale * p_power(prime_, Integer(dot(g->exponent, alpha) + g->offset));
        }
        const auto& t = std::get<TableRule>(rule_);
        const auto it = t.values.find(alpha);
        return it == t.values.end() ? Rational(0) : it->second;
    }

    /// α ↦ val_p(g(α)), +∞ off the support. A piecewise-affine net.
    [[nodiscard]] NetSpec valuation_net() const {
        NetSpec net{dim_, {}};
        for (auto& outside : complement(support_)) {
            net.pieces.push_back(Piece{std::move(outside), ConstantRule{ExtInt::pos_inf()}});
        }
        if (const auto* g = std::get_if<GeometricRule>(&rule_)) {
            if (g->scale == 0) {
                net.pieces.push_back(Piece{support_, ConstantRule{ExtInt::pos_inf()}});
            } else {
                net.pieces.push_back(
                    Piece{support_, AffineRule{g->exponent, Integer(g->offset + val_p(g->scale, prime_).value())}});
            }
            return net;
        }
        for_each_point(support_, [&](const MultiIndex& a) {
            Region cell;
            for (const auto& c : a) {
                cell.box.push_back(Interval::point(c));
            }
            net.pieces.push_back(Piece{std::move(cell), ConstantRule{val_p(coefficient(a), prime_)}});
        });
        return net;
    }

    /// The series lies in a basic bounded submodule of F (the one cut out by
    /// its own valuation net).
    [[nodiscard]] bool well_formed(const FieldShape& shape) const {
        return classify_bounded(valuation_net(), shape).holds;
    }

    /// Terms of the series on a finite window.
    [[nodiscard]] LaurentElement truncate(const Region& window) const {
        LaurentElement out(dim_, prime_);
        const Region part = intersect(support_, window);
        if (!part.empty()) {
            for_each_point(part, [&](const MultiIndex& a) { out.add_term(a, coefficient(a)); });
        }
        return out;
    }

private:
    std::size_t dim_;
    Integer prime_;
    Region support_;
    Rule rule_;
};

/// s(a) = Σ_{α' ≤ a} g(α') t^{α'} restricted to a finite window, with ≤ the
/// inverse lexicographic order.
inline LaurentElement partial_sum(const SeriesGenerator& g, const MultiIndex& a, const Region& window) {
    if (a.dim() != g.dim() || window.dim() != g.dim()) {
        throw error(errc::dimension_mismatch, "partial sum arguments disagree on dimension");
    }
    LaurentElement out(g.dim(), g.prime());
    const Region part = intersect(g.support(), window);
    if (part.empty()) {
        return out;
    }
    for_each_point(part, [&](const MultiIndex& b) {
        if (invlex_compare(b, a) <= 0) {
            out.add_term(b, g.coefficient(b));
        }
    });
    return out;
}

} // namespace hlf
