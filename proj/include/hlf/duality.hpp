#pragma once

// The pairing π_x(y) = π_0(xy) = Σ_α x(−α) y(α), the self-duality map
// γ : x ↦ π_x, the c-topology seminorms and pseudo-polars.

#include <hlf/topology.hpp>

#include <functional>
#include <optional>
#include <utility>

namespace hlf {

/// π_{α0}(x) = x(α0).
inline Rational projection(const MultiIndex& a0, const LaurentElement& x) { return x.coefficient(a0); }

inline Rational pair(const LaurentElement& x, const LaurentElement& y) {
    require_compatible(x, y);
    const bool x_smaller = x.terms().size() <= y.terms().size();
    const auto& walk = x_smaller ? x : y;
    const auto& other = x_smaller ? y : x;
    Rational sum = 0;
    for (const auto& [alpha, c] : walk.terms()) {
        const auto it = other.terms().find(-alpha);
        if (it != other.terms().end()) {
            sum += c * it->second;
        }
    }
    return sum;
}

/// A continuous linear form on F, held by its preimage under γ.
struct FunctionalHandle {
    LaurentElement representer;

    Rational operator()(const LaurentElement& y) const { return pair(representer, y); }
};

inline FunctionalHandle gamma(LaurentElement x) { return FunctionalHandle{std::move(x)}; }

/// β ↦ w(t^β) for a functional w.
using MonomialOracle = std::function<Rational(const MultiIndex&)>;

/// Evaluates the handle on actual monomials t^β.
inline MonomialOracle monomial_oracle(const FunctionalHandle& w) {
    return [w](const MultiIndex& beta) {
        const auto& x = w.representer;
        return w(LaurentElement::monomial(x.dim(), x.prime(), beta, Rational(1)));
    };
}

/// The element Σ_{α ∈ window} w(t^{−α}) t^α.
inline LaurentElement reconstruct(const MonomialOracle& w, const Region& window, std::size_t dim, const Integer& prime) {
    if (window.dim() != dim) {
        throw error(errc::dimension_mismatch, "window and element dimensions differ");
    }
    LaurentElement out(dim, prime);
    for_each_point(window, [&](const MultiIndex& alpha) { out.add_term(alpha, w(-alpha)); });
    return out;
}

struct CSeminorm {
    QExp value;
    bool compactoid = true; ///< false: B is not a basic compactoid for the shape
};

/// |π_x|_B = sup_{y ∈ B} |π_x(y)| for B = Σ p^{B(α)} t^α. By the ultrametric
/// inequality the sup is attained on a monomial y = p^{B(α)} t^α, giving the
/// exponent max over α of −val_p(x(−α)) − B(α).
inline CSeminorm c_seminorm(const LaurentElement& x, const NetSpec& b_net, const FieldShape& shape) {
    if (x.dim() != b_net.dim) {
        throw error(errc::dimension_mismatch, "element and net dimensions differ");
    }
    CSeminorm out;
    out.compactoid = classify_compactoid(b_net, shape).holds;
    ExtInt best = ExtInt::neg_inf();
    for (const auto& [beta, c] : x.terms()) {
        best = max(best, -val_p(c, x.prime()) - net_eval(b_net, -beta));
    }
    out.value = QExp(best);
    return out;
}

/// a = p^exponent t^index, an element of A with |π_y(a)| ≥ 1.
struct PolarCertificate {
    MultiIndex index;
    Integer exponent;
    Rational pairing;
};

struct PolarMembership {
    bool member = true;
    std::optional<PolarCertificate> refutation;

    explicit operator bool() const noexcept { return member; }
};

/// y ∈ A^γ = Σ p^{1 − A(−α)} t^α, the γ-preimage of the pseudo-polar
/// {w : |w(a)| < 1 for all a ∈ A}. A refutation names a monomial of A that
/// pairs with y to absolute value at least 1.
inline PolarMembership polar_membership(const LaurentElement& y, const NetSpec& a_net) {
    if (y.dim() != a_net.dim) {
        throw error(errc::dimension_mismatch, "element and net dimensions differ");
    }
    require_valid(a_net);
    const NetSpec polar = polar_transform(a_net);
    for (const auto& [alpha, c] : y.terms()) {
        const ExtInt v = val_p(c, y.prime());
        if (v >= net_eval(polar, alpha)) {
            continue;
        }
        const MultiIndex index = -alpha;
        const ExtInt k = net_eval(a_net, index);
        // k = −∞ means A ⊇ K t^index; scale so the pairing is a unit.
        Integer exponent = k.is_finite() ? k.value() : Integer(-v.value());
        const auto a = LaurentElement::monomial(y.dim(), y.prime(), index, p_power(y.prime(), exponent));
        return {false, PolarCertificate{index, std::move(exponent), pair(y, a)}};
    }
    return {};
}

} // namespace hlf
