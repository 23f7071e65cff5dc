#pragma once

// Decision procedures for the three families of nets that matter for the
// topology and bornologies of F:
//
//   open lattice   n : Z^d → Z ∪ {−∞}
//     l > r (eventually infinite):  for each tail, n ≡ −∞ on I(k, tail)
//                                   for all large k
//     l ≤ r (bound, limit):         for each tail, n is bounded above on
//                                   I(tail) and sup over I(k, tail) → −∞
//                                   as k → +∞
//   bounded        k : Z^d → Z ∪ {+∞}
//     l > r (eventually infinite):  for each tail, k ≡ +∞ on I(j, tail)
//                                   for all small j
//     l ≤ r (bound):                for each tail, k is bounded below on
//                                   I(tail)
//   compactoid     bounded, and for l ≤ r (limit)
//                  inf over I(j, tail) → +∞ as j → −∞
//
// For a piecewise-affine-on-boxes net every clause reduces to a sign test on
// the affine coefficients along the unbounded directions of each box. A box
// meets the slices of every tail in its tail projection, so a violation found
// in one box is a violation for a concrete tail.

#include <hlf/nets.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hlf {

enum class NetKind { open_lattice, bounded, compactoid };

inline std::string to_string(NetKind k) {
    switch (k) {
        case NetKind::open_lattice: return "lattice";
        case NetKind::bounded: return "bounded";
        case NetKind::compactoid: return "compactoid";
    }
    return "?";
}

enum class Clause {
    eventually_infinite, ///< constant ±∞ far out along a ((·)) coordinate
    bounded,             ///< bounded above (lattice) or below (bounded, compactoid)
    limit,               ///< sup → −∞ (lattice) or inf → +∞ (compactoid)
};

inline std::string to_string(Clause c) {
    switch (c) {
        case Clause::eventually_infinite: return "eventually-infinite";
        case Clause::bounded: return "bound";
        case Clause::limit: return "limit";
    }
    return "?";
}

/// Certificate for a failed classification.
struct Witness {
    Clause clause = Clause::eventually_infinite;
    std::size_t l = 1;      ///< 1-based coordinate of the violated clause
    std::size_t piece = 0;  ///< offending piece
    std::vector<Integer> tail;
    std::vector<int> direction; ///< unbounded direction along which the clause fails
    MultiIndex point;           ///< a point of the offending piece on `tail`
    std::string reason;
};

struct Verdict {
    bool holds = true;
    std::optional<Witness> witness;

    explicit operator bool() const noexcept { return holds; }
};

namespace detail {

inline Verdict violation(Clause clause, std::size_t l, std::size_t piece, const Region& region, std::size_t axis,
                         int sign, std::string reason) {
    Witness w;
    w.clause = clause;
    w.l = l;
    w.piece = piece;
    w.point = region.nearest_to_origin();
    w.tail.assign(w.point.begin() + static_cast<std::ptrdiff_t>(l), w.point.end());
    w.direction.assign(region.dim(), 0);
    w.direction[axis - 1] = sign;
    w.reason = std::move(reason);
    return Verdict{false, std::move(w)};
}

inline void reject_infinity(const NetSpec& net, const ExtInt& forbidden, const char* what) {
    for (std::size_t i = 0; i < net.pieces.size(); ++i) {
        if (is_constant(net.pieces[i].rule, forbidden)) {
            throw error(errc::invalid_net_values, std::string(what) + " nets take no " + forbidden.to_string() +
                                                      " values (piece " + std::to_string(i) + ")");
        }
    }
}

inline const AffineRule* affine(const Piece& p) { return std::get_if<AffineRule>(&p.rule); }

inline bool finite_constant(const Piece& p) {
    const auto* k = std::get_if<ConstantRule>(&p.rule);
    return k != nullptr && k->value.is_finite();
}

// Bounded-above (sign = +1) or bounded-below (sign = −1) on I(tail) at level l.
inline std::optional<Verdict> check_bound(const NetSpec& net, std::size_t l, int sign) {
    for (std::size_t i = 0; i < net.pieces.size(); ++i) {
        const auto* aff = affine(net.pieces[i]);
        if (aff == nullptr) {
            continue;
        }
        const auto& box = net.pieces[i].region.box;
        for (std::size_t c = 1; c <= l; ++c) {
            const int s = aff->coeffs[c - 1].sign() * sign;
            if (s > 0 && !box[c - 1].hi) {
                return violation(Clause::bounded, l, i, net.pieces[i].region, c, +1,
                                 sign > 0 ? "unbounded above as coordinate grows" : "unbounded below as coordinate grows");
            }
            if (s < 0 && !box[c - 1].lo) {
                return violation(Clause::bounded, l, i, net.pieces[i].region, c, -1,
                                 sign > 0 ? "unbounded above as coordinate decreases"
                                          : "unbounded below as coordinate decreases");
            }
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Open-lattice test. Values must lie in Z ∪ {−∞}.
inline Verdict classify_open_lattice(const NetSpec& net, const FieldShape& shape) {
    shape.check(net.dim);
    require_valid(net);
    detail::reject_infinity(net, ExtInt::pos_inf(), "open-lattice");
    const ExtInt neg_inf = ExtInt::neg_inf();
    for (std::size_t l = 1; l <= net.dim; ++l) {
        if (!shape.mixed(l)) {
            for (std::size_t i = 0; i < net.pieces.size(); ++i) {
                const auto& p = net.pieces[i];
                if (!p.region.box[l - 1].hi && !is_constant(p.rule, neg_inf)) {
                    return detail::violation(Clause::eventually_infinite, l, i, p.region, l, +1,
                                             "finite values for arbitrarily large coordinate");
                }
            }
            continue;
        }
        if (auto v = detail::check_bound(net, l, +1)) {
            return *v;
        }
        for (std::size_t i = 0; i < net.pieces.size(); ++i) {
            const auto& p = net.pieces[i];
            if (p.region.box[l - 1].hi) {
                continue;
            }
            const auto* aff = detail::affine(p);
            if (detail::finite_constant(p) || (aff != nullptr && aff->coeffs[l - 1].sign() >= 0)) {
                return detail::violation(Clause::limit, l, i, p.region, l, +1,
                                         "sup does not tend to -inf as the coordinate grows");
            }
        }
    }
    return {};
}

namespace detail {

inline Verdict classify_bounded_impl(const NetSpec& net, const FieldShape& shape, const char* what) {
    shape.check(net.dim);
    require_valid(net);
    reject_infinity(net, ExtInt::neg_inf(), what);
    const ExtInt pos_inf = ExtInt::pos_inf();
    for (std::size_t l = 1; l <= net.dim; ++l) {
        if (!shape.mixed(l)) {
            for (std::size_t i = 0; i < net.pieces.size(); ++i) {
                const auto& p = net.pieces[i];
                if (!p.region.box[l - 1].lo && !is_constant(p.rule, pos_inf)) {
                    return violation(Clause::eventually_infinite, l, i, p.region, l, -1,
                                     "finite values for arbitrarily small coordinate");
                }
            }
        } else if (auto v = check_bound(net, l, -1)) {
            return *v;
        }
    }
    return {};
}

} // namespace detail

/// Basic bounded submodule test. Values must lie in Z ∪ {+∞}.
inline Verdict classify_bounded(const NetSpec& net, const FieldShape& shape) {
    return detail::classify_bounded_impl(net, shape, "bounded");
}

/// Basic compactoid submodule test. Values must lie in Z ∪ {+∞}.
inline Verdict classify_compactoid(const NetSpec& net, const FieldShape& shape) {
    if (auto v = detail::classify_bounded_impl(net, shape, "compactoid"); !v) {
        return v;
    }
    for (std::size_t l = 1; l <= shape.r; ++l) {
        for (std::size_t i = 0; i < net.pieces.size(); ++i) {
            const auto& p = net.pieces[i];
            if (p.region.box[l - 1].lo) {
                continue;
            }
            const auto* aff = detail::affine(p);
            if (detail::finite_constant(p) || (aff != nullptr && aff->coeffs[l - 1].sign() >= 0)) {
                return detail::violation(Clause::limit, l, i, p.region, l, -1,
                                         "inf does not tend to +inf as the coordinate decreases");
            }
        }
    }
    return {};
}

inline Verdict classify(const NetSpec& net, const FieldShape& shape, NetKind kind) {
    switch (kind) {
        case NetKind::open_lattice: return classify_open_lattice(net, shape);
        case NetKind::bounded: return classify_bounded(net, shape);
        case NetKind::compactoid: return classify_compactoid(net, shape);
    }
    return {};
}

// ---------------------------------------------------------------------------
// Window oracle

/// Outcome of brute-force evaluation on [−W, W]^d.
///
/// Only clauses with a finitary fragment are tested:
///   * forbidden infinities anywhere in the window;
///   * the eventually-infinite clause along each ((·)) coordinate, by reading the slice at the
///     window edge. This is exact once W exceeds the stabilization radius of
///     the presentation, and is skipped (flagged insufficient) otherwise.
/// Growth clauses along {{·}} coordinates are never window-decidable and are
/// always flagged. A counterexample refutes a "true" verdict; corroboration
/// never proves one.
struct Corroboration {
    bool counterexample = false;
    bool insufficient = false;
    std::optional<MultiIndex> point;
    std::optional<ExtInt> value;
    std::string clause;
    std::vector<std::string> undecided;
};

inline Corroboration window_corroborate(const NetSpec& net, const FieldShape& shape, NetKind kind,
                                        const Integer& radius) {
    if (radius < 1) {
        throw error(errc::invalid_argument, "window radius must be at least 1");
    }
    shape.check(net.dim);
    require_valid(net);
    const bool lattice = kind == NetKind::open_lattice;
    const ExtInt forbidden = lattice ? ExtInt::pos_inf() : ExtInt::neg_inf();
    const ExtInt far_value = lattice ? ExtInt::neg_inf() : ExtInt::pos_inf();
    const Region window = Region::window(net.dim, radius);

    Corroboration out;
    for (const auto& p : net.pieces) {
        if (!is_constant(p.rule, forbidden)) {
            continue;
        }
        const Region part = intersect(p.region, window);
        if (!part.empty()) {
            const MultiIndex a = part.nearest_to_origin();
            out.counterexample = true;
            out.point = a;
            out.value = net_eval(net, a);
            out.clause = "values";
            return out;
        }
    }

    const bool stable = radius > stabilization_radius(net);
    for (std::size_t l = 1; l <= net.dim; ++l) {
        if (shape.mixed(l)) {
            out.insufficient = true;
            out.undecided.push_back(to_string(Clause::bounded) + " and " + to_string(Clause::limit) + " at l=" +
                                    std::to_string(l) + ": growth clauses are not window-decidable");
            continue;
        }
        if (!stable) {
            out.insufficient = true;
            out.undecided.push_back(to_string(Clause::eventually_infinite) + " at l=" + std::to_string(l) +
                                    ": breakpoints reach the window edge");
            continue;
        }
        Region edge = window;
        edge.box[l - 1] = Interval::point(lattice ? radius : Integer(-radius));
        const WindowTable values = tabulate(net, edge);
        std::optional<MultiIndex> bad;
        for_each_point(edge, [&](const MultiIndex& a) {
            if (!bad && values.at(a) != far_value) {
                bad = a;
            }
        });
        if (bad) {
            out.counterexample = true;
            out.value = values.at(*bad);
            out.point = std::move(bad);
            out.clause = to_string(Clause::eventually_infinite) + " at l=" + std::to_string(l);
            return out;
        }
    }
    return out;
}

} // namespace hlf
