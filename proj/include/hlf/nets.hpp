#pragma once

// Piecewise-affine presentations of nets Z^d → Z ∪ {±∞}.
//
// A net is an ordered list of pieces; each piece is a product box together
// with a value rule. The boxes must tile Z^d exactly, so evaluation never
// depends on the order of the pieces.

#include <hlf/foundations.hpp>

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hlf {

/// [lo, hi] with a missing bound standing for −∞ (lo) or +∞ (hi).
struct Interval {
    std::optional<Integer> lo;
    std::optional<Integer> hi;

    static Interval all() { return {}; }
    static Interval at_most(Integer hi) { return {std::nullopt, std::move(hi)}; }
    static Interval at_least(Integer lo) { return {std::move(lo), std::nullopt}; }
    static Interval between(Integer lo, Integer hi) { return {std::move(lo), std::move(hi)}; }
    static Interval point(const Integer& x) { return {x, x}; }

    [[nodiscard]] bool empty() const { return lo && hi && *lo > *hi; }
    [[nodiscard]] bool bounded() const { return lo && hi; }
    [[nodiscard]] bool contains(const Integer& x) const { return (!lo || *lo <= x) && (!hi || x <= *hi); }

    /// The element of the interval closest to zero.
    [[nodiscard]] Integer nearest_to_zero() const {
        if (lo && *lo > 0) {
            return *lo;
        }
        if (hi && *hi < 0) {
            return *hi;
        }
        return 0;
    }

    friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval intersect(const Interval& a, const Interval& b) {
    Interval out;
    if (a.lo && b.lo) {
        out.lo = std::max(*a.lo, *b.lo);
    } else {
        out.lo = a.lo ? a.lo : b.lo;
    }
    if (a.hi && b.hi) {
        out.hi = std::min(*a.hi, *b.hi);
    } else {
        out.hi = a.hi ? a.hi : b.hi;
    }
    return out;
}

/// {−x : x ∈ I}
inline Interval negate(const Interval& a) {
    Interval out;
    if (a.hi) {
        out.lo = Integer(-*a.hi);
    }
    if (a.lo) {
        out.hi = Integer(-*a.lo);
    }
    return out;
}

/// A product box in Z^d.
struct Region {
    std::vector<Interval> box;

    [[nodiscard]] std::size_t dim() const noexcept { return box.size(); }

    [[nodiscard]] bool empty() const {
        return std::any_of(box.begin(), box.end(), [](const Interval& i) { return i.empty(); });
    }

    [[nodiscard]] bool finite() const {
        return std::all_of(box.begin(), box.end(), [](const Interval& i) { return i.bounded(); });
    }

    [[nodiscard]] bool contains(const MultiIndex& a) const {
        if (a.dim() != box.size()) {
            throw error(errc::dimension_mismatch, "point " + a.to_string() + " against a box of dimension " +
                                                      std::to_string(box.size()));
        }
        for (std::size_t c = 0; c < box.size(); ++c) {
            if (!box[c].contains(a[c])) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] MultiIndex nearest_to_origin() const {
        std::vector<Integer> coords;
        coords.reserve(box.size());
        for (const auto& i : box) {
            coords.push_back(i.nearest_to_zero());
        }
        return MultiIndex(std::move(coords));
    }

    /// Number of points of a finite box.
    [[nodiscard]] std::size_t cardinality() const {
        std::size_t n = 1;
        for (const auto& i : box) {
            n *= static_cast<std::size_t>(*i.hi - *i.lo + 1);
        }
        return n;
    }

    static Region whole(std::size_t d) { return Region{std::vector<Interval>(d)}; }

    /// The window [−radius, radius]^d.
    static Region window(std::size_t d, const Integer& radius) {
        return Region{std::vector<Interval>(d, Interval::between(Integer(-radius), radius))};
    }

    friend bool operator==(const Region&, const Region&) = default;
};

inline Region intersect(const Region& a, const Region& b) {
    if (a.dim() != b.dim()) {
        throw error(errc::dimension_mismatch, "intersecting boxes of different dimension");
    }
    Region out;
    out.box.reserve(a.dim());
    for (std::size_t c = 0; c < a.dim(); ++c) {
        out.box.push_back(intersect(a.box[c], b.box[c]));
    }
    return out;
}

inline Region negate(const Region& a) {
    Region out;
    out.box.reserve(a.dim());
    for (const auto& i : a.box) {
        out.box.push_back(negate(i));
    }
    return out;
}

/// {α − β : β ∈ box}
inline Region reflect_about(const MultiIndex& alpha, const Region& a) {
    Region out = negate(a);
    for (std::size_t c = 0; c < out.dim(); ++c) {
        if (out.box[c].lo) {
            *out.box[c].lo += alpha[c];
        }
        if (out.box[c].hi) {
            *out.box[c].hi += alpha[c];
        }
    }
    return out;
}

/// Calls f(point) for every point of a finite box, first coordinate fastest.
template <class F>
void for_each_point(const Region& box, F&& f) {
    if (!box.finite()) {
        throw error(errc::invalid_argument, "cannot enumerate an unbounded box");
    }
    if (box.empty()) {
        return;
    }
    const std::size_t d = box.dim();
    std::vector<Integer> cur(d);
    for (std::size_t c = 0; c < d; ++c) {
        cur[c] = *box.box[c].lo;
    }
    MultiIndex point(cur);
    while (true) {
        f(static_cast<const MultiIndex&>(point));
        std::size_t c = 0;
        for (; c < d; ++c) {
            if (point[c] < *box.box[c].hi) {
                ++point[c];
                break;
            }
            point[c] = *box.box[c].lo;
        }
        if (c == d) {
            return;
        }
    }
}

struct ConstantRule {
    ExtInt value;
    friend bool operator==(const ConstantRule&, const ConstantRule&) = default;
};

/// α ↦ coeffs·α + offset. Always finite.
struct AffineRule {
    std::vector<Integer> coeffs;
    Integer offset;
    friend bool operator==(const AffineRule&, const AffineRule&) = default;
};

using ValueRule = std::variant<ConstantRule, AffineRule>;

inline Integer dot(const std::vector<Integer>& coeffs, const MultiIndex& a) {
    Integer s = 0;
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
        s += coeffs[c] * a[c];
    }
    return s;
}

inline ExtInt apply(const ValueRule& rule, const MultiIndex& a) {
    if (const auto* k = std::get_if<ConstantRule>(&rule)) {
        return k->value;
    }
    const auto& aff = std::get<AffineRule>(rule);
    return ExtInt(Integer(dot(aff.coeffs, a) + aff.offset));
}

/// True for a constant rule with the given value.
inline bool is_constant(const ValueRule& rule, const ExtInt& v) {
    const auto* k = std::get_if<ConstantRule>(&rule);
    return k != nullptr && k->value == v;
}

struct Piece {
    Region region;
    ValueRule rule;
    friend bool operator==(const Piece&, const Piece&) = default;
};

struct NetSpec {
    std::size_t dim = 1;
    std::vector<Piece> pieces;

    static NetSpec constant(std::size_t d, ExtInt v) {
        return NetSpec{d, {Piece{Region::whole(d), ConstantRule{std::move(v)}}}};
    }

    friend bool operator==(const NetSpec&, const NetSpec&) = default;
};

/// F = K{{t_1}}…{{t_r}}((t_{r+1}))…((t_{n−1})).
struct FieldShape {
    std::size_t n = 2;
    std::size_t r = 0;

    [[nodiscard]] std::size_t d() const noexcept { return n - 1; }

    /// Coordinate l (1-based) is a {{·}} parameter.
    [[nodiscard]] bool mixed(std::size_t l) const noexcept { return l <= r; }

    void check(std::size_t dim) const {
        if (n < 2 || r > n - 1) {
            throw error(errc::invalid_argument, "field shape needs n >= 2 and 0 <= r <= n-1, got n=" +
                                                    std::to_string(n) + " r=" + std::to_string(r));
        }
        if (dim != d()) {
            throw error(errc::dimension_mismatch, "net of dimension " + std::to_string(dim) +
                                                      " against a field with n=" + std::to_string(n));
        }
    }

    friend bool operator==(const FieldShape&, const FieldShape&) = default;
};

// ---------------------------------------------------------------------------
// Partition check

struct PartitionDefect {
    enum class kind { malformed, gap, overlap };
    kind what;
    std::optional<MultiIndex> witness;
    std::vector<std::size_t> pieces;
    std::string detail;
};

struct PartitionReport {
    std::vector<PartitionDefect> defects;
    [[nodiscard]] bool ok() const noexcept { return defects.empty(); }
};

inline std::string to_string(PartitionDefect::kind k) {
    switch (k) {
        case PartitionDefect::kind::malformed: return "malformed";
        case PartitionDefect::kind::gap: return "gap";
        case PartitionDefect::kind::overlap: return "overlap";
    }
    return "?";
}

namespace detail {

// Elementary intervals of one coordinate: the coarsest partition of Z that
// refines every piece's interval on that coordinate.
inline std::vector<Interval> elementary_intervals(const NetSpec& net, std::size_t c) {
    std::vector<Integer> cuts;
    for (const auto& p : net.pieces) {
        const auto& i = p.region.box[c];
        if (i.lo) {
            cuts.push_back(*i.lo);
        }
        if (i.hi) {
            cuts.push_back(*i.hi + 1);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Interval> out;
    if (cuts.empty()) {
        out.push_back(Interval::all());
        return out;
    }
    out.push_back(Interval::at_most(Integer(cuts.front() - 1)));
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        out.push_back(Interval::between(cuts[k], Integer(cuts[k + 1] - 1)));
    }
    out.push_back(Interval::at_least(cuts.back()));
    return out;
}

inline bool interval_covers(const Interval& outer, const Interval& inner) {
    const bool lo_ok = !outer.lo || (inner.lo && *inner.lo >= *outer.lo);
    const bool hi_ok = !outer.hi || (inner.hi && *inner.hi <= *outer.hi);
    return lo_ok && hi_ok;
}

} // namespace detail

/// Checks that the pieces tile Z^d: no gaps, no overlaps, well-formed rules.
inline PartitionReport validate_partition(const NetSpec& net) {
    PartitionReport report;
    using K = PartitionDefect::kind;
    if (net.dim == 0) {
        report.defects.push_back({K::malformed, std::nullopt, {}, "dimension must be at least 1"});
        return report;
    }
    for (std::size_t i = 0; i < net.pieces.size(); ++i) {
        const auto& p = net.pieces[i];
        if (p.region.dim() != net.dim) {
            report.defects.push_back({K::malformed, std::nullopt, {i}, "box has the wrong dimension"});
        } else if (p.region.empty()) {
            report.defects.push_back({K::malformed, std::nullopt, {i}, "box is empty"});
        }
        if (const auto* aff = std::get_if<AffineRule>(&p.rule); aff && aff->coeffs.size() != net.dim) {
            report.defects.push_back({K::malformed, std::nullopt, {i}, "affine rule has the wrong arity"});
        }
    }
    if (!report.ok()) {
        return report;
    }

    const std::size_t d = net.dim;
    const std::size_t m = net.pieces.size();
    std::vector<std::vector<Interval>> cells(d);
    std::vector<std::vector<boost::dynamic_bitset<>>> masks(d);
    for (std::size_t c = 0; c < d; ++c) {
        cells[c] = detail::elementary_intervals(net, c);
        for (const auto& cell : cells[c]) {
            boost::dynamic_bitset<> mask(m);
            for (std::size_t i = 0; i < m; ++i) {
                mask[i] = detail::interval_covers(net.pieces[i].region.box[c], cell);
            }
            masks[c].push_back(std::move(mask));
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> reported;
    std::vector<std::size_t> idx(d, 0);
    while (true) {
        boost::dynamic_bitset<> covering = masks[0][idx[0]];
        for (std::size_t c = 1; c < d; ++c) {
            covering &= masks[c][idx[c]];
        }
        const std::size_t count = covering.count();
        if (count == 0) {
            Region cell;
            for (std::size_t c = 0; c < d; ++c) {
                cell.box.push_back(cells[c][idx[c]]);
            }
            report.defects.push_back({K::gap, cell.nearest_to_origin(), {}, "point covered by no piece"});
        } else if (count > 1) {
            const std::size_t a = covering.find_first();
            const std::size_t b = covering.find_next(a);
            if (std::find(reported.begin(), reported.end(), std::pair{a, b}) == reported.end()) {
                reported.emplace_back(a, b);
                const Region both = intersect(net.pieces[a].region, net.pieces[b].region);
                report.defects.push_back({K::overlap, both.nearest_to_origin(), {a, b}, "pieces overlap"});
            }
        }
        std::size_t c = 0;
        for (; c < d; ++c) {
            if (++idx[c] < cells[c].size()) {
                break;
            }
            idx[c] = 0;
        }
        if (c == d) {
            break;
        }
    }
    return report;
}

inline void require_valid(const NetSpec& net) {
    const auto report = validate_partition(net);
    if (!report.ok()) {
        const auto& first = report.defects.front();
        std::string msg = to_string(first.what);
        if (first.witness) {
            msg += " at " + first.witness->to_string();
        }
        throw error(errc::invalid_partition, msg + ": " + first.detail);
    }
}

// ---------------------------------------------------------------------------
// Evaluation

/// Index of the piece covering a, or nullopt.
inline std::optional<std::size_t> locate(const NetSpec& net, const MultiIndex& a) {
    for (std::size_t i = 0; i < net.pieces.size(); ++i) {
        if (net.pieces[i].region.contains(a)) {
            return i;
        }
    }
    return std::nullopt;
}

inline ExtInt net_eval(const NetSpec& net, const MultiIndex& a) {
    if (a.dim() != net.dim) {
        throw error(errc::dimension_mismatch,
                    "evaluating a net of dimension " + std::to_string(net.dim) + " at " + a.to_string());
    }
    const auto i = locate(net, a);
    if (!i) {
        throw error(errc::invalid_partition, "no piece covers " + a.to_string());
    }
    return apply(net.pieces[*i].rule, a);
}

/// Values of something over a finite box, first coordinate fastest.
class WindowTable {
public:
    WindowTable() = default;
    explicit WindowTable(Region window) : window_(std::move(window)) {
        if (!window_.finite()) {
            throw error(errc::invalid_argument, "window must be a finite box");
        }
        values_.assign(window_.empty() ? 0 : window_.cardinality(), ExtInt{});
    }

    [[nodiscard]] const Region& window() const noexcept { return window_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] const std::vector<ExtInt>& values() const noexcept { return values_; }

    [[nodiscard]] std::size_t offset_of(const MultiIndex& a) const {
        if (!window_.contains(a)) {
            throw error(errc::invalid_argument, a.to_string() + " lies outside the window");
        }
        std::size_t off = 0;
        std::size_t stride = 1;
        for (std::size_t c = 0; c < window_.dim(); ++c) {
            const auto& i = window_.box[c];
            off += stride * static_cast<std::size_t>(a[c] - *i.lo);
            stride *= static_cast<std::size_t>(*i.hi - *i.lo + 1);
        }
        return off;
    }

    [[nodiscard]] const ExtInt& at(const MultiIndex& a) const { return values_[offset_of(a)]; }
    ExtInt& at(const MultiIndex& a) { return values_[offset_of(a)]; }

    friend bool operator==(const WindowTable&, const WindowTable&) = default;

private:
    Region window_;
    std::vector<ExtInt> values_;
};

/// Evaluates a valid net on every point of a finite window. Each piece is
/// visited once, so the cost is linear in the window size.
inline WindowTable tabulate(const NetSpec& net, const Region& window) {
    if (window.dim() != net.dim) {
        throw error(errc::dimension_mismatch, "window and net dimensions differ");
    }
    WindowTable table(window);
    for (const auto& piece : net.pieces) {
        const Region part = intersect(piece.region, window);
        if (part.empty()) {
            continue;
        }
        if (const auto* k = std::get_if<ConstantRule>(&piece.rule)) {
            for_each_point(part, [&](const MultiIndex& a) { table.at(a) = k->value; });
        } else {
            for_each_point(part, [&](const MultiIndex& a) { table.at(a) = apply(piece.rule, a); });
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// Transforms

/// α ↦ 1 − net(−α): the net of the pseudo-polar submodule.
inline NetSpec polar_transform(const NetSpec& net) {
    NetSpec out{net.dim, {}};
    out.pieces.reserve(net.pieces.size());
    for (const auto& p : net.pieces) {
        Piece q{negate(p.region), p.rule};
        if (auto* k = std::get_if<ConstantRule>(&q.rule)) {
            k->value = ExtInt(1) - k->value;
        } else {
            // 1 − (c·(−α) + b) = c·α + (1 − b)
            auto& aff = std::get<AffineRule>(q.rule);
            aff.offset = 1 - aff.offset;
        }
        out.pieces.push_back(std::move(q));
    }
    return out;
}

/// α ↦ −net(−α). Turns the net of a compactoid submodule into the net of the
/// admissible seminorm dual to it.
inline NetSpec reflection_net(const NetSpec& net) {
    NetSpec out{net.dim, {}};
    out.pieces.reserve(net.pieces.size());
    for (const auto& p : net.pieces) {
        Piece q{negate(p.region), p.rule};
        if (auto* k = std::get_if<ConstantRule>(&q.rule)) {
            k->value = -k->value;
        } else {
            auto& aff = std::get<AffineRule>(q.rule);
            aff.offset = -aff.offset;
        }
        out.pieces.push_back(std::move(q));
    }
    return out;
}

/// Largest absolute value of a finite box endpoint. Beyond this radius every
/// axis-parallel ray stays inside a single piece.
inline Integer stabilization_radius(const NetSpec& net) {
    Integer r = 0;
    for (const auto& p : net.pieces) {
        for (const auto& i : p.region.box) {
            if (i.lo) {
                r = std::max(r, Integer(abs(*i.lo)));
            }
            if (i.hi) {
                r = std::max(r, Integer(abs(*i.hi)));
            }
        }
    }
    return r;
}

} // namespace hlf
