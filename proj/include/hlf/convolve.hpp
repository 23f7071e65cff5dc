#pragma once

#include <hlf/nets.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hlf {

/// Supremum of g·β + base over a box, with a maximizer when it is finite.
struct AffineExtreme {
    ExtInt value;
    std::optional<MultiIndex> at;
};

inline AffineExtreme affine_sup(const std::vector<Integer>& g, const Integer& base, const Region& box) {
    std::vector<Integer> point;
    point.reserve(box.dim());
    for (std::size_t c = 0; c < box.dim(); ++c) {
        const auto& i = box.box[c];
        const int s = g[c].sign();
        if (s > 0) {
            if (!i.hi) {
                return {ExtInt::pos_inf(), std::nullopt};
            }
            point.push_back(*i.hi);
        } else if (s < 0) {
            if (!i.lo) {
                return {ExtInt::pos_inf(), std::nullopt};
            }
            point.push_back(*i.lo);
        } else {
            point.push_back(i.nearest_to_zero());
        }
    }
    MultiIndex at(std::move(point));
    return {ExtInt(Integer(dot(g, at) + base)), std::move(at)};
}

inline AffineExtreme affine_inf(const std::vector<Integer>& g, const Integer& base, const Region& box) {
    std::vector<Integer> neg(g.size());
    for (std::size_t c = 0; c < g.size(); ++c) {
        neg[c] = -g[c];
    }
    auto s = affine_sup(neg, Integer(-base), box);
    return {-s.value, std::move(s.at)};
}

namespace detail {

inline const std::vector<Integer>& coeffs_or_zero(const ValueRule& rule, const std::vector<Integer>& zero) {
    const auto* aff = std::get_if<AffineRule>(&rule);
    return aff != nullptr ? aff->coeffs : zero;
}

} // namespace detail

/// Tropical product of two nets on a finite window:
///
///   (net1 ⊕ net2)(α) = inf over β + γ = α of net1(β) + net2(γ).
///
/// For a fixed α and a fixed pair of pieces the admissible β form the box
/// P1 ∩ (α − P2) and the summand is affine in β, so the infimum is read off
/// the box's vertices with no truncation of the search space. The value is
/// exact for every valid pair of nets, including −∞ when some affine sum is
/// unbounded below. Throws IndeterminateSum when some decomposition adds +∞
/// and −∞.
inline WindowTable min_plus_convolve(const NetSpec& net1, const NetSpec& net2, const Region& window) {
    if (net1.dim != net2.dim || window.dim() != net1.dim) {
        throw error(errc::dimension_mismatch, "convolving nets of dimension " + std::to_string(net1.dim) + " and " +
                                                  std::to_string(net2.dim));
    }
    require_valid(net1);
    require_valid(net2);
    const std::vector<Integer> zero(net1.dim, Integer(0));

    WindowTable out(window);
    for_each_point(window, [&](const MultiIndex& alpha) {
        ExtInt best = ExtInt::pos_inf();
        for (std::size_t i = 0; i < net1.pieces.size(); ++i) {
            const auto& p1 = net1.pieces[i];
            for (std::size_t j = 0; j < net2.pieces.size(); ++j) {
                const auto& p2 = net2.pieces[j];
                const Region betas = intersect(p1.region, reflect_about(alpha, p2.region));
                if (betas.empty()) {
                    continue;
                }
                const auto* k1 = std::get_if<ConstantRule>(&p1.rule);
                const auto* k2 = std::get_if<ConstantRule>(&p2.rule);
                const bool inf1 = k1 != nullptr && !k1->value.is_finite();
                const bool inf2 = k2 != nullptr && !k2->value.is_finite();
                ExtInt v;
                if (inf1 || inf2) {
                    if (inf1 && inf2 && k1->value != k2->value) {
                        throw error(errc::indeterminate_sum, "pieces " + std::to_string(i) + " and " +
                                                                 std::to_string(j) + " add +inf and -inf at " +
                                                                 alpha.to_string());
                    }
                    v = inf1 ? k1->value : k2->value;
                } else {
                    const auto& a1 = detail::coeffs_or_zero(p1.rule, zero);
                    const auto& a2 = detail::coeffs_or_zero(p2.rule, zero);
                    std::vector<Integer> g(net1.dim);
                    for (std::size_t c = 0; c < net1.dim; ++c) {
                        g[c] = a1[c] - a2[c];
                    }
                    Integer base = dot(a2, alpha);
                    base += k1 != nullptr ? k1->value.value() : std::get<AffineRule>(p1.rule).offset;
                    base += k2 != nullptr ? k2->value.value() : std::get<AffineRule>(p2.rule).offset;
                    v = affine_inf(g, base, betas).value;
                }
                best = min(best, v);
            }
        }
        out.at(alpha) = best;
    });
    return out;
}

} // namespace hlf
