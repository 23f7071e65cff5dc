#pragma once

// Admissible seminorms ‖x‖ = sup_α |x(α)| q^{n(α)} and their relatives.
//
// Seminorm values are always of the form q^e or 0, so they are carried as
// exponents e ∈ Z ∪ {−∞} (QExp). Here q = p.

#include <hlf/classify.hpp>
#include <hlf/convolve.hpp>
#include <hlf/elements.hpp>

#include <span>
#include <string>
#include <vector>

namespace hlf {

/// The value q^e of a seminorm; e = −∞ stands for 0.
class QExp {
public:
    QExp() : exponent_(ExtInt::neg_inf()) {}
    explicit QExp(ExtInt exponent) : exponent_(std::move(exponent)) {
        if (exponent_.is_pos_inf()) {
            throw error(errc::invalid_argument, "seminorm values are finite");
        }
    }

    static QExp zero() { return QExp(); }

    [[nodiscard]] const ExtInt& exponent() const noexcept { return exponent_; }
    [[nodiscard]] bool is_zero() const noexcept { return exponent_.is_neg_inf(); }

    /// Value after multiplying the argument by a scalar of valuation v.
    [[nodiscard]] QExp scaled_by_valuation(const Integer& v) const { return QExp(exponent_ - ExtInt(v)); }

    friend bool operator==(const QExp&, const QExp&) = default;
    friend std::strong_ordering operator<=>(const QExp& a, const QExp& b) { return a.exponent_ <=> b.exponent_; }

    [[nodiscard]] std::string to_string() const { return exponent_.to_string(); }

private:
    ExtInt exponent_;
};

namespace detail {

inline void require_lattice_values(const NetSpec& net) {
    for (std::size_t i = 0; i < net.pieces.size(); ++i) {
        if (is_constant(net.pieces[i].rule, ExtInt::pos_inf())) {
            throw error(errc::invalid_net_values, "seminorm nets take no +inf values (piece " + std::to_string(i) + ")");
        }
    }
}

inline void require_same_dim(const NetSpec& net, const LaurentElement& x) {
    if (net.dim != x.dim()) {
        throw error(errc::dimension_mismatch,
                    "net of dimension " + std::to_string(net.dim) + " and element of dimension " + std::to_string(x.dim()));
    }
}

} // namespace detail

/// ‖x‖ for the admissible seminorm attached to `net`: the exponent is
/// max over the support of net(α) − val_p(x(α)).
inline QExp seminorm_eval(const NetSpec& net, const LaurentElement& x) {
    detail::require_same_dim(net, x);
    require_valid(net);
    detail::require_lattice_values(net);
    ExtInt best = ExtInt::neg_inf();
    for (const auto& [alpha, c] : x.terms()) {
        best = max(best, net_eval(net, alpha) - val_p(c, x.prime()));
    }
    return QExp(best);
}

/// x ∈ p^m Λ, tested coefficient by coefficient on x / p^m.
inline bool in_scaled_lattice(const LaurentElement& x, const NetSpec& net, const Integer& m) {
    const Rational unscale = p_power(x.prime(), Integer(-m));
    for (const auto& [alpha, c] : x.terms()) {
        if (val_p(c * unscale, x.prime()) < net_eval(net, alpha)) {
            return false;
        }
    }
    return true;
}

/// Gauge of the lattice Λ = Σ p^{net(α)} t^α: inf |a| over a = p^m with
/// x ∈ aΛ. Computed by searching m with the membership predicate alone, so
/// it stays independent of the closed form in seminorm_eval.
inline QExp gauge_eval(const NetSpec& net, const LaurentElement& x) {
    detail::require_same_dim(net, x);
    require_valid(net);
    detail::require_lattice_values(net);

    // Membership is monotone in m (Λ is an O-module). Every finite
    // constraint m ≤ val − net lies strictly inside (−cap, cap).
    Integer cap = 1;
    for (const auto& [alpha, c] : x.terms()) {
        const ExtInt v = val_p(c, x.prime());
        const ExtInt n = net_eval(net, alpha);
        Integer bound = abs(v.value()) + 1;
        if (n.is_finite()) {
            bound += abs(n.value());
        }
        cap = std::max(cap, bound);
    }
    if (in_scaled_lattice(x, net, cap)) {
        return QExp::zero();
    }
    Integer lo = -cap;
    if (!in_scaled_lattice(x, net, lo)) {
        throw error(errc::gauge_infinite, "no scalar multiple of the lattice contains the element");
    }
    Integer hi = cap; // lo is a member, hi is not
    while (hi - lo > 1) {
        Integer mid = lo + (hi - lo) / 2;
        if (in_scaled_lattice(x, net, mid)) {
            lo = std::move(mid);
        } else {
            hi = std::move(mid);
        }
    }
    return QExp(ExtInt(Integer(-lo)));
}

/// sup_α n(α) − k(α) with a point where it is attained.
struct SupDifference {
    ExtInt sup;
    std::optional<MultiIndex> argmax;
};

/// Exact supremum of n − k over Z^d, computed piece pair by piece pair.
/// When n cuts out an open lattice and k a basic bounded submodule the result
/// is finite or −∞; +∞ means n − k is unbounded.
inline SupDifference bounded_sup_difference(const NetSpec& n_net, const NetSpec& k_net, const FieldShape& shape) {
    shape.check(n_net.dim);
    shape.check(k_net.dim);
    require_valid(n_net);
    require_valid(k_net);
    const std::vector<Integer> zero(n_net.dim, Integer(0));

    SupDifference best{ExtInt::neg_inf(), std::nullopt};
    for (std::size_t i = 0; i < n_net.pieces.size(); ++i) {
        const auto& pn = n_net.pieces[i];
        for (std::size_t j = 0; j < k_net.pieces.size(); ++j) {
            const auto& pk = k_net.pieces[j];
            const Region box = intersect(pn.region, pk.region);
            if (box.empty()) {
                continue;
            }
            const auto* kn = std::get_if<ConstantRule>(&pn.rule);
            const auto* kk = std::get_if<ConstantRule>(&pk.rule);
            AffineExtreme e;
            if ((kn != nullptr && !kn->value.is_finite()) || (kk != nullptr && !kk->value.is_finite())) {
                const MultiIndex at = box.nearest_to_origin();
                try {
                    e = {apply(pn.rule, at) - apply(pk.rule, at), at};
                } catch (const error&) {
                    throw error(errc::indeterminate_sum, "pieces " + std::to_string(i) + " and " + std::to_string(j) +
                                                             " meet with both values infinite of the same sign");
                }
            } else {
                const auto& an = detail::coeffs_or_zero(pn.rule, zero);
                const auto& ak = detail::coeffs_or_zero(pk.rule, zero);
                std::vector<Integer> g(n_net.dim);
                for (std::size_t c = 0; c < g.size(); ++c) {
                    g[c] = an[c] - ak[c];
                }
                Integer base = kn != nullptr ? kn->value.value() : std::get<AffineRule>(pn.rule).offset;
                base -= kk != nullptr ? kk->value.value() : std::get<AffineRule>(pk.rule).offset;
                e = affine_sup(g, base, box);
            }
            if (e.value > best.sup) {
                best.sup = e.value;
                best.argmax = e.value.is_finite() ? e.at : std::nullopt;
            }
        }
    }
    if (best.sup.is_pos_inf()) {
        best.argmax.reset();
    }
    return best;
}

/// ‖x_W − s(a)‖ for each a of the schedule, where x_W is the window
/// truncation of the series. Tails shrink along an increasing schedule, so the
/// values never increase; they reach −∞ once every remaining coefficient sits
/// where the net is −∞.
inline std::vector<QExp> convergence_check(const SeriesGenerator& g, const NetSpec& net,
                                           std::span<const MultiIndex> schedule, const Region& window) {
    if (net.dim != g.dim() || window.dim() != g.dim()) {
        throw error(errc::dimension_mismatch, "convergence check arguments disagree on dimension");
    }
    for (std::size_t i = 1; i < schedule.size(); ++i) {
        if (invlex_compare(schedule[i - 1], schedule[i]) >= 0) {
            throw error(errc::schedule_not_monotone, schedule[i - 1].to_string() + " is not below " +
                                                         schedule[i].to_string());
        }
    }
    const LaurentElement full = g.truncate(window);
    std::vector<QExp> out;
    out.reserve(schedule.size());
    for (const auto& a : schedule) {
        out.push_back(seminorm_eval(net, full - partial_sum(g, a, window)));
    }
    return out;
}

/// Seminorm on F ≅ F_0^e from seminorms on the components: the max.
inline QExp product_seminorm(std::span<const QExp> components) {
    if (components.empty()) {
        throw error(errc::empty_product, "a product seminorm needs at least one component");
    }
    QExp best = components.front();
    for (const auto& c : components.subspan(1)) {
        best = std::max(best, c);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Archimedean mode

/// Piecewise-constant ρ : Z^d → Q_{>0} ∪ {∞}; nullopt is ∞.
struct RhoPiece {
    Region region;
    std::optional<Rational> rho;
};

class RhoNet {
public:
    RhoNet(std::size_t dim, std::vector<RhoPiece> pieces) : dim_(dim), pieces_(std::move(pieces)) {
        for (const auto& p : pieces_) {
            if (p.region.dim() != dim_) {
                throw error(errc::dimension_mismatch, "rho piece of the wrong dimension");
            }
            if (p.rho && *p.rho <= 0) {
                throw error(errc::nonpositive_rho, "rho must be positive, got " + p.rho->str());
            }
        }
    }

    /// Reads a constant-valued net as ρ, with "+inf" as ∞.
    static RhoNet from_net(const NetSpec& net) {
        require_valid(net);
        std::vector<RhoPiece> pieces;
        for (const auto& p : net.pieces) {
            const auto* k = std::get_if<ConstantRule>(&p.rule);
            if (k == nullptr || k->value.is_neg_inf()) {
                throw error(errc::invalid_net_values, "archimedean nets are constant per piece with values in Q>0 or +inf");
            }
            pieces.push_back({p.region, k->value.is_pos_inf() ? std::nullopt
                                                               : std::optional<Rational>(Rational(k->value.value()))});
        }
        return RhoNet(net.dim, std::move(pieces));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const std::vector<RhoPiece>& pieces() const noexcept { return pieces_; }

    [[nodiscard]] std::optional<Rational> eval(const MultiIndex& a) const {
        for (const auto& p : pieces_) {
            if (p.region.contains(a)) {
                return p.rho;
            }
        }
        throw error(errc::invalid_partition, "no rho piece covers " + a.to_string());
    }

    /// ρ = ∞ eventually along every coordinate, for every fixed tail.
    [[nodiscard]] bool admissible() const {
        NetSpec pattern{dim_, {}};
        for (const auto& p : pieces_) {
            pattern.pieces.push_back({p.region, ConstantRule{p.rho ? ExtInt(0) : ExtInt::neg_inf()}});
        }
        return classify_open_lattice(pattern, FieldShape{dim_ + 1, 0}).holds;
    }

private:
    std::size_t dim_;
    std::vector<RhoPiece> pieces_;
};

/// sup_α |x(α)| / ρ(α) with a/∞ = 0 and the real absolute value.
inline Rational archimedean_seminorm(const LaurentElement& x, const RhoNet& rho) {
    if (x.dim() != rho.dim()) {
        throw error(errc::dimension_mismatch, "element and rho dimensions differ");
    }
    Rational best = 0;
    for (const auto& [alpha, c] : x.terms()) {
        if (const auto r = rho.eval(alpha)) {
            best = std::max(best, Rational(abs(c) / *r));
        }
    }
    return best;
}

} // namespace hlf
