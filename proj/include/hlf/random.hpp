#pragma once

// Seeded generators for nets and elements.
//
// Every stream is an mt19937_64 seeded from (seed, label, index) by FNV-1a
// and splitmix64, so a case can be regenerated on its own and adding a new
// label never shifts an existing stream. Draws are reduced by hand rather
// than through <random> distributions, whose output is implementation
// defined.

#include <hlf/classify.hpp>
#include <hlf/elements.hpp>

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hlf::rnd {

using Engine = std::mt19937_64;

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline Engine substream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0) {
    const std::uint64_t s = splitmix64(splitmix64(seed ^ fnv1a(label)) + index);
    return Engine(s);
}

/// Uniform in [lo, hi].
inline long long uniform(Engine& e, long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(e() % span);
}

inline bool chance(Engine& e, unsigned percent) { return e() % 100 < percent; }

template <class T>
const T& pick(Engine& e, const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(e, 0, static_cast<long long>(items.size()) - 1))];
}

// ---------------------------------------------------------------------------
// Nets

/// Which infinite constants a generated net may use.
struct ValueSet {
    bool pos_inf = true;
    bool neg_inf = true;
};

inline constexpr ValueSet lattice_values{false, true};
inline constexpr ValueSet bounded_values{true, false};

inline ValueRule random_rule(Engine& e, std::size_t d, ValueSet values) {
    const auto roll = uniform(e, 0, 9);
    if (roll < 2 && values.pos_inf) {
        return ConstantRule{ExtInt::pos_inf()};
    }
    if (roll < 4 && values.neg_inf) {
        return ConstantRule{ExtInt::neg_inf()};
    }
    if (roll < 6) {
        return ConstantRule{ExtInt(uniform(e, -3, 3))};
    }
    AffineRule aff;
    for (std::size_t c = 0; c < d; ++c) {
        aff.coeffs.emplace_back(uniform(e, -3, 3));
    }
    aff.offset = uniform(e, -3, 3);
    return aff;
}

/// Guillotine partition of Z^d into 2 to 5 boxes with cuts in [−3, 3],
/// each box carrying a random rule.
inline NetSpec random_net(Engine& e, std::size_t d, ValueSet values = {}) {
    std::vector<Region> boxes{Region::whole(d)};
    const auto target = static_cast<std::size_t>(uniform(e, 2, 5));
    for (int attempt = 0; boxes.size() < target && attempt < 64; ++attempt) {
        const auto i = static_cast<std::size_t>(uniform(e, 0, static_cast<long long>(boxes.size()) - 1));
        const auto c = static_cast<std::size_t>(uniform(e, 0, static_cast<long long>(d) - 1));
        const Integer cut = uniform(e, -3, 3);
        const Interval& iv = boxes[i].box[c];
        // split into (≤ cut − 1) and (≥ cut)
        if (!iv.contains(cut) || !iv.contains(Integer(cut - 1))) {
            continue;
        }
        Region upper = boxes[i];
        boxes[i].box[c].hi = cut - 1;
        upper.box[c].lo = cut;
        boxes.push_back(std::move(upper));
    }
    NetSpec net{d, {}};
    for (auto& b : boxes) {
        net.pieces.push_back(Piece{std::move(b), random_rule(e, d, values)});
    }
    return net;
}

namespace detail {

inline AffineRule& as_affine(Piece& p, std::size_t d) {
    if (auto* k = std::get_if<ConstantRule>(&p.rule)) {
        p.rule = AffineRule{std::vector<Integer>(d, Integer(0)), k->value.value()};
    }
    return std::get<AffineRule>(p.rule);
}

/// Splits piece i along `axis` into (≤ cut − 1) and (≥ cut), at a random cut
/// inside its interval; returns the indices of the lower and upper halves.
inline std::pair<std::size_t, std::size_t> split(NetSpec& net, std::size_t i, std::size_t axis, Engine& e) {
    const Interval iv = net.pieces[i].region.box[axis];
    Integer cut = iv.lo ? Integer(*iv.lo + uniform(e, 1, 4)) : iv.hi ? Integer(*iv.hi - uniform(e, 0, 3))
                                                                     : Integer(uniform(e, -3, 3));
    Piece upper = net.pieces[i];
    net.pieces[i].region.box[axis].hi = cut - 1;
    upper.region.box[axis].lo = std::move(cut);
    net.pieces.push_back(std::move(upper));
    return {i, net.pieces.size() - 1};
}

} // namespace detail

/// Edits `net` until it classifies as `kind` for `shape`, one witness at a
/// time. The net must already avoid the infinity the kind forbids. Offending
/// pieces are usually split so that only their far end changes. Returns false
/// if the edits do not converge.
inline bool repair(NetSpec& net, const FieldShape& shape, NetKind kind, Engine& e) {
    const bool lattice = kind == NetKind::open_lattice;
    const ExtInt far = lattice ? ExtInt::neg_inf() : ExtInt::pos_inf();
    for (int round = 0; round < 64; ++round) {
        const Verdict v = classify(net, shape, kind);
        if (v.holds) {
            return true;
        }
        const Witness& w = *v.witness;
        std::size_t axis = 0;
        while (w.direction[axis] == 0) {
            ++axis;
        }
        std::size_t target = w.piece;
        if (w.clause != Clause::bounded && chance(e, 75)) {
            // lattice clauses look towards +∞ on the axis, the others towards −∞
            const auto [lower, upper] = detail::split(net, w.piece, axis, e);
            target = lattice ? upper : lower;
        }
        Piece& p = net.pieces[target];
        const Interval& iv = p.region.box[axis];
        switch (w.clause) {
            case Clause::eventually_infinite: p.rule = ConstantRule{far}; break;
            case Clause::bounded: std::get<AffineRule>(p.rule).coeffs[axis] = 0; break;
            case Clause::limit: {
                // lattice: decrease along +axis; compactoid: increase along −axis
                const bool other_end_open = lattice ? !iv.lo : !iv.hi;
                if (other_end_open) {
                    p.rule = ConstantRule{far};
                } else {
                    detail::as_affine(p, net.dim).coeffs[axis] = -uniform(e, 1, 3);
                }
                break;
            }
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Elements

/// ±p^k · u/v with u, v ∈ [1, 9] prime to p.
inline Rational unit_scaled(Engine& e, const Integer& p, long long k) {
    auto unit = [&] {
        while (true) {
            const Integer u = uniform(e, 1, 9);
            if (u % p != 0) {
                return u;
            }
        }
    };
    Rational c = p_power(p, Integer(k)) * Rational(unit(), unit());
    return chance(e, 50) ? c : Rational(-c);
}

inline MultiIndex random_index(Engine& e, std::size_t d, long long radius) {
    std::vector<Integer> coords;
    for (std::size_t c = 0; c < d; ++c) {
        coords.emplace_back(uniform(e, -radius, radius));
    }
    return MultiIndex(std::move(coords));
}

/// 0 to `max_terms` terms, indices in [−radius, radius]^d, valuations in [−4, 4].
inline LaurentElement random_element(Engine& e, std::size_t d, const Integer& p, long long radius = 6,
                                     long long max_terms = 6) {
    LaurentElement x(d, p);
    const auto terms = uniform(e, 0, max_terms);
    for (long long t = 0; t < terms; ++t) {
        x.add_term(random_index(e, d, radius), unit_scaled(e, p, uniform(e, -4, 4)));
    }
    return x;
}

/// An index where the net is finite, if one turns up within a few draws.
inline MultiIndex finite_point(Engine& e, const NetSpec& net, long long radius) {
    MultiIndex a = random_index(e, net.dim, radius);
    for (int tries = 0; tries < 8 && !net_eval(net, a).is_finite(); ++tries) {
        a = random_index(e, net.dim, radius);
    }
    return a;
}

/// Like random_element, with indices drawn preferably where `net` is finite.
inline LaurentElement random_element_on(Engine& e, const NetSpec& net, const Integer& p, long long radius = 6,
                                        long long max_terms = 6) {
    LaurentElement x(net.dim, p);
    const auto terms = uniform(e, 0, max_terms);
    for (long long t = 0; t < terms; ++t) {
        x.add_term(finite_point(e, net, radius), unit_scaled(e, p, uniform(e, -4, 4)));
    }
    return x;
}

/// A random element of Σ p^{net(α)} t^α: each term sits where the net is
/// not +∞, with valuation at least the net value there.
inline LaurentElement random_element_in(Engine& e, const NetSpec& net, const Integer& p, long long radius = 6,
                                        long long max_terms = 6) {
    LaurentElement x(net.dim, p);
    const auto terms = uniform(e, 0, max_terms);
    for (long long t = 0; t < terms; ++t) {
        const MultiIndex a = finite_point(e, net, radius);
        const ExtInt floor = net_eval(net, a);
        if (floor.is_pos_inf()) {
            continue;
        }
        const Integer base = floor.is_finite() ? floor.value() : Integer(uniform(e, -4, 4));
        const Integer k = base + uniform(e, 0, 2);
        x.add_term(a, unit_scaled(e, p, static_cast<long long>(k)));
    }
    return x;
}

} // namespace hlf::rnd
