#pragma once

// Property suites over random nets and elements.
//
// Each suite is a list of independent cases. Case i of suite s draws all of
// its randomness from substream (seed, s, i), so any single case can be
// rerun in isolation and reports are identical across runs.

#include <hlf/duality.hpp>
#include <hlf/io.hpp>
#include <hlf/random.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace hlf::props {

struct SuiteConfig {
    std::uint64_t seed = 0;
    std::size_t cases = 1;
    long long window = 4;
    std::vector<std::size_t> dims;
    std::vector<Integer> primes;
    std::vector<FieldShape> shapes;
    std::map<std::string, std::size_t> suite_cases; ///< per-suite override of `cases`
    std::string fault;                             ///< deliberately broken check, for self-tests
};

inline const std::vector<std::string>& fault_names() {
    static const std::vector<std::string> names{"gauge_off_by_one"};
    return names;
}

inline constexpr long long corroboration_radius = 25;
inline constexpr long long involution_radius = 25;
inline constexpr long long sampling_radius = 15;

// ---------------------------------------------------------------------------
// Cases

struct CaseResult {
    bool pass = true;
    std::string detail;
    std::size_t generated = 0; ///< candidate nets drawn
    std::size_t rejected = 0;  ///< candidates discarded (invalid partition or failed repair)
    std::map<std::string, std::size_t> tally;

    void fail(std::string why) {
        if (pass) {
            pass = false;
            detail = std::move(why);
        }
    }
};

namespace detail {

inline std::string flat(std::string json) {
    while (!json.empty() && json.back() == '\n') {
        json.pop_back();
    }
    return json;
}

inline std::string show(const NetSpec& n) { return flat(io::to_json(n)); }
inline std::string show(const LaurentElement& x) { return flat(io::to_json(x)); }

/// Draws nets until one is a valid partition and `accept` keeps it.
template <class Make>
NetSpec draw_net(CaseResult& r, Make&& make) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        ++r.generated;
        std::optional<NetSpec> net = make();
        if (net && validate_partition(*net).ok()) {
            return *std::move(net);
        }
        ++r.rejected;
    }
    throw error(errc::invalid_argument, "net generator rejected 100 candidates in a row");
}

inline NetSpec draw_kind(CaseResult& r, rnd::Engine& e, const FieldShape& shape, NetKind kind) {
    const auto values = kind == NetKind::open_lattice ? rnd::lattice_values : rnd::bounded_values;
    return draw_net(r, [&]() -> std::optional<NetSpec> {
        NetSpec net = rnd::random_net(e, shape.d(), values);
        if (!rnd::repair(net, shape, kind, e)) {
            return std::nullopt;
        }
        return net;
    });
}

inline bool has_constant(const NetSpec& net, const ExtInt& v) {
    return std::any_of(net.pieces.begin(), net.pieces.end(), [&](const Piece& p) { return is_constant(p.rule, v); });
}

/// Exact agreement of two nets at every point of a finite window, decided
/// box by box: two rules agree on a box iff they agree at one point and
/// their difference has zero slope along every coordinate the box spans.
inline std::optional<MultiIndex> first_disagreement(const NetSpec& a, const NetSpec& b, const Region& window) {
    const std::vector<Integer> zero(a.dim, Integer(0));
    for (const auto& pa : a.pieces) {
        for (const auto& pb : b.pieces) {
            const Region box = intersect(intersect(pa.region, pb.region), window);
            if (box.empty()) {
                continue;
            }
            const MultiIndex at = box.nearest_to_origin();
            if (apply(pa.rule, at) != apply(pb.rule, at)) {
                return at;
            }
            if (std::holds_alternative<ConstantRule>(pa.rule) && std::holds_alternative<ConstantRule>(pb.rule)) {
                continue;
            }
            const auto& ca = hlf::detail::coeffs_or_zero(pa.rule, zero);
            const auto& cb = hlf::detail::coeffs_or_zero(pb.rule, zero);
            for (std::size_t c = 0; c < a.dim; ++c) {
                if (ca[c] != cb[c] && *box.box[c].lo != *box.box[c].hi) {
                    MultiIndex other = at;
                    other[c] = other[c] == *box.box[c].lo ? *box.box[c].hi : *box.box[c].lo;
                    return other;
                }
            }
        }
    }
    return std::nullopt;
}

inline MultiIndex random_point(rnd::Engine& e, std::size_t d, long long radius) {
    return rnd::random_index(e, d, radius);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Suite inputs. Kept separate from the checks so the corroboration suite can
// regenerate the nets of the first four suites.

struct Context {
    const SuiteConfig& cfg;
    FieldShape shape;
    Integer prime;
    rnd::Engine engine;
};

struct GaugeInput {
    NetSpec net;
    LaurentElement x;
};

inline GaugeInput make_gauge(Context& c, CaseResult& r) {
    NetSpec net = detail::draw_kind(r, c.engine, c.shape, NetKind::open_lattice);
    LaurentElement x = rnd::random_element_on(c.engine, net, c.prime);
    return {std::move(net), std::move(x)};
}

struct DualityInput {
    NetSpec lattice_side;  ///< values in Z ∪ {−∞}, repaired half of the time
    NetSpec bounded_side;  ///< values in Z ∪ {+∞}, repaired half of the time
};

inline DualityInput make_duality(Context& c, CaseResult& r) {
    auto draw = [&](NetKind kind) {
        const bool fix = rnd::chance(c.engine, 50);
        const auto values = kind == NetKind::open_lattice ? rnd::lattice_values : rnd::bounded_values;
        return detail::draw_net(r, [&]() -> std::optional<NetSpec> {
            NetSpec net = rnd::random_net(c.engine, c.shape.d(), values);
            if (fix && !rnd::repair(net, c.shape, kind, c.engine)) {
                return std::nullopt;
            }
            return net;
        });
    };
    NetSpec n = draw(NetKind::open_lattice);
    NetSpec b = draw(NetKind::compactoid);
    return {std::move(n), std::move(b)};
}

inline NetSpec make_involution(Context& c, CaseResult& r) {
    return detail::draw_net(r, [&] { return std::optional<NetSpec>(rnd::random_net(c.engine, c.shape.d())); });
}

struct BicontinuityInput {
    NetSpec b;
    LaurentElement x;
};

inline BicontinuityInput make_bicontinuity(Context& c, CaseResult& r) {
    NetSpec b = detail::draw_kind(r, c.engine, c.shape, NetKind::compactoid);
    // the c-seminorm reads B at −β for β in the support of x
    LaurentElement x = rnd::random_element_on(c.engine, reflection_net(b), c.prime);
    return {std::move(b), std::move(x)};
}

// ---------------------------------------------------------------------------
// Checks

inline void check_gauge(Context& c, const GaugeInput& in, CaseResult& r) {
    const QExp sup = seminorm_eval(in.net, in.x);
    QExp gauge = gauge_eval(in.net, in.x);
    if (c.cfg.fault == "gauge_off_by_one" && !gauge.is_zero()) {
        gauge = QExp(gauge.exponent() + ExtInt(1));
    }
    if (sup != gauge) {
        r.fail("seminorm exponent " + sup.to_string() + " but gauge exponent " + gauge.to_string() +
               "; net=" + detail::show(in.net) + " element=" + detail::show(in.x));
    }
    ++r.tally[sup.is_zero() ? "zero_values" : "finite_values"];
}

inline void check_duality(Context& c, const DualityInput& in, CaseResult& r) {
    const bool lat = classify_open_lattice(in.lattice_side, c.shape).holds;
    const bool cpt = classify_compactoid(polar_transform(in.lattice_side), c.shape).holds;
    if (lat != cpt) {
        r.fail(std::string("open lattice ") + (lat ? "true" : "false") + " but compactoid(polar) " +
               (cpt ? "true" : "false") + "; net=" + detail::show(in.lattice_side));
    }
    const bool cpt2 = classify_compactoid(in.bounded_side, c.shape).holds;
    const bool lat2 = classify_open_lattice(polar_transform(in.bounded_side), c.shape).holds;
    if (cpt2 != lat2) {
        r.fail(std::string("compactoid ") + (cpt2 ? "true" : "false") + " but open lattice(polar) " +
               (lat2 ? "true" : "false") + "; net=" + detail::show(in.bounded_side));
    }
    ++r.tally[lat ? "lattice_true" : "lattice_false"];
    ++r.tally[cpt2 ? "compactoid_true" : "compactoid_false"];
}

inline void check_involution(Context& c, const NetSpec& net, CaseResult& r) {
    const std::size_t d = net.dim;
    const Region window = Region::window(d, involution_radius);
    const NetSpec polar = polar_transform(net);
    const NetSpec twice = polar_transform(polar);
    if (const auto at = detail::first_disagreement(net, twice, window)) {
        r.fail("double polar differs at " + at->to_string() + "; net=" + detail::show(net));
        return;
    }
    // Brute force: the whole window when it is small, a sample otherwise.
    auto probe = [&](const MultiIndex& a) {
        const ExtInt direct = ExtInt(1) - net_eval(net, -a);
        if (net_eval(polar, a) != direct) {
            r.fail("polar value at " + a.to_string() + " is " + net_eval(polar, a).to_string() + ", expected " +
                   direct.to_string() + "; net=" + detail::show(net));
        }
        if (net_eval(twice, a) != net_eval(net, a)) {
            r.fail("double polar differs at " + a.to_string() + "; net=" + detail::show(net));
        }
    };
    if (d <= 2) {
        const WindowTable expect = tabulate(net, window);
        if (tabulate(twice, window) != expect) {
            r.fail("double polar differs on the window; net=" + detail::show(net));
        }
        for_each_point(window, probe);
    } else {
        for (int k = 0; k < 256 && r.pass; ++k) {
            probe(detail::random_point(c.engine, d, involution_radius));
        }
    }
}

inline void check_bicontinuity(Context& c, const BicontinuityInput& in, CaseResult& r) {
    const CSeminorm cs = c_seminorm(in.x, in.b, c.shape);
    const QExp closed = seminorm_eval(reflection_net(in.b), in.x);
    if (!cs.compactoid) {
        r.fail("generated net is not compactoid; net=" + detail::show(in.b));
        return;
    }
    if (cs.value != closed) {
        r.fail("c-seminorm exponent " + cs.value.to_string() + " but reflected seminorm " + closed.to_string() +
               "; net=" + detail::show(in.b) + " element=" + detail::show(in.x));
        return;
    }
    const Integer& p = in.x.prime();
    auto pairing_exponent = [&](const LaurentElement& y) { return -val_p(pair(in.x, y), p); };
    ExtInt attained = ExtInt::neg_inf();
    auto probe = [&](const MultiIndex& a, bool on_support) {
        const ExtInt k = net_eval(in.b, a);
        if (!k.is_finite()) {
            return;
        }
        const auto y = LaurentElement::monomial(in.x.dim(), p, a, p_power(p, k.value()));
        const ExtInt e = pairing_exponent(y);
        if (e > cs.value.exponent()) {
            r.fail("monomial p^" + k.to_string() + " t^" + a.to_string() + " pairs to exponent " + e.to_string() +
                   " above " + cs.value.to_string() + "; net=" + detail::show(in.b) +
                   " element=" + detail::show(in.x));
        }
        if (on_support) {
            attained = max(attained, e);
        }
    };
    for (const auto& [beta, coeff] : in.x.terms()) {
        probe(-beta, true);
    }
    if (attained != cs.value.exponent()) {
        r.fail("sup over monomials " + attained.to_string() + " differs from " + cs.value.to_string() +
               "; net=" + detail::show(in.b) + " element=" + detail::show(in.x));
    }
    for (int k = 0; k < 24; ++k) {
        probe(detail::random_point(c.engine, in.x.dim(), sampling_radius), false);
    }
    for (int k = 0; k < 3; ++k) {
        const LaurentElement y = rnd::random_element_in(c.engine, in.b, p);
        if (pairing_exponent(y) > cs.value.exponent()) {
            r.fail("element " + detail::show(y) + " of B pairs above the c-seminorm; net=" + detail::show(in.b) +
                   " element=" + detail::show(in.x));
        }
    }
}

// ---------------------------------------------------------------------------
// Suites

struct Suite {
    std::string_view name;
    bool per_shape; ///< `cases` for every shape rather than in total
    void (*run)(Context&, CaseResult&);
};

inline void run_gauge(Context& c, CaseResult& r) { check_gauge(c, make_gauge(c, r), r); }
inline void run_duality(Context& c, CaseResult& r) { check_duality(c, make_duality(c, r), r); }
inline void run_involution(Context& c, CaseResult& r) { check_involution(c, make_involution(c, r), r); }
inline void run_bicontinuity(Context& c, CaseResult& r) { check_bicontinuity(c, make_bicontinuity(c, r), r); }

inline void run_round_trip(Context& c, CaseResult& r) {
    const std::size_t d = c.shape.d();
    const LaurentElement x = rnd::random_element(c.engine, d, c.prime);
    Region window = x.support_box().value_or(Region::window(d, 0));
    const long long margin = rnd::uniform(c.engine, 0, 1);
    for (auto& iv : window.box) {
        *iv.lo -= margin;
        *iv.hi += margin;
    }
    const LaurentElement back = reconstruct(monomial_oracle(gamma(x)), window, d, c.prime);
    const std::string want = io::to_json(x);
    if (io::to_json(back) != want) {
        r.fail("reconstruction " + detail::show(back) + " of " + detail::show(x));
    }
    if (io::to_json(io::element_from_json(io::parse(want))) != want) {
        r.fail("canonical form does not round trip: " + detail::show(x));
    }
}

inline void run_ultrametric(Context& c, CaseResult& r) {
    const std::size_t d = c.shape.d();
    const bool fix = rnd::chance(c.engine, 50);
    const NetSpec net = detail::draw_net(r, [&]() -> std::optional<NetSpec> {
        NetSpec n = rnd::random_net(c.engine, d, rnd::lattice_values);
        if (fix && !rnd::repair(n, c.shape, NetKind::open_lattice, c.engine)) {
            return std::nullopt;
        }
        return n;
    });
    const LaurentElement x = rnd::random_element_on(c.engine, net, c.prime);
    LaurentElement y = rnd::random_element_on(c.engine, net, c.prime);
    if (rnd::chance(c.engine, 30)) {
        y = y - x; // forces cancellation in x + y
    }
    const QExp nx = seminorm_eval(net, x);
    const QExp ny = seminorm_eval(net, y);
    const QExp nxy = seminorm_eval(net, x + y);
    const std::string where = "; net=" + detail::show(net) + " x=" + detail::show(x) + " y=" + detail::show(y);
    const QExp top = std::max(nx, ny);
    if (nxy > top) {
        r.fail("|x+y| exponent " + nxy.to_string() + " exceeds max " + top.to_string() + where);
    }
    if (nx != ny && nxy != top) {
        r.fail("|x| != |y| but |x+y| exponent " + nxy.to_string() + " differs from " + top.to_string() + where);
    }
    for (const LaurentElement* z : std::initializer_list<const LaurentElement*>{&x, &y}) {
        const bool member = element_in_net(*z, net);
        const bool unit_ball = seminorm_eval(net, *z).exponent() <= ExtInt(0);
        if (member != unit_ball) {
            r.fail(std::string("membership ") + (member ? "true" : "false") + " but seminorm exponent " +
                   seminorm_eval(net, *z).to_string() + where);
        }
        ++r.tally[member ? "members" : "non_members"];
    }
    const Integer k = rnd::uniform(c.engine, -3, 3);
    const QExp scaled = seminorm_eval(net, scalar_mul(p_power(c.prime, k), x));
    if (scaled != nx.scaled_by_valuation(k)) {
        r.fail("|p^" + k.str() + " x| exponent " + scaled.to_string() + " but |x| exponent " + nx.to_string() + where);
    }
}

inline void run_multiplication(Context& c, CaseResult& r) {
    const NetSpec b1 = detail::draw_kind(r, c.engine, c.shape, NetKind::bounded);
    const NetSpec b2 = detail::draw_kind(r, c.engine, c.shape, NetKind::bounded);
    const LaurentElement x = rnd::random_element_in(c.engine, b1, c.prime, 3, 5);
    const LaurentElement y = rnd::random_element_in(c.engine, b2, c.prime, 3, 5);
    const std::string where = "; net1=" + detail::show(b1) + " net2=" + detail::show(b2) + " x=" + detail::show(x) +
                              " y=" + detail::show(y);
    if (!element_in_net(x, b1) || !element_in_net(y, b2)) {
        r.fail("generated factor outside its net" + where);
        return;
    }
    const LaurentElement z = x * y;
    const auto box = z.support_box();
    if (!box) {
        ++r.tally["zero_products"];
        return;
    }
    // One convolution over the support box when it is small, otherwise one
    // single-point window per term.
    std::optional<WindowTable> table;
    if (box->cardinality() <= 512) {
        table = min_plus_convolve(b1, b2, *box);
    }
    for (const auto& [alpha, coeff] : z.terms()) {
        ExtInt bound;
        if (table) {
            bound = table->at(alpha);
        } else {
            Region point;
            for (const auto& a : alpha) {
                point.box.push_back(Interval::point(a));
            }
            bound = min_plus_convolve(b1, b2, point).at(alpha);
        }
        const ExtInt v = val_p(coeff, c.prime);
        if (v < bound) {
            r.fail("coefficient at " + alpha.to_string() + " has valuation " + v.to_string() + " below the bound " +
                   bound.to_string() + where);
            return;
        }
    }
    ++r.tally["nonzero_products"];
}

/// Nets that are −∞ once the last coordinate reaches `cutoff`.
inline NetSpec cut_last_coordinate(const NetSpec& net, const Integer& cutoff) {
    const std::size_t d = net.dim;
    NetSpec out{d, {}};
    Interval below = Interval::at_most(Integer(cutoff - 1));
    for (const auto& p : net.pieces) {
        Piece q = p;
        q.region.box[d - 1] = intersect(q.region.box[d - 1], below);
        if (!q.region.empty()) {
            out.pieces.push_back(std::move(q));
        }
    }
    Region far = Region::whole(d);
    far.box[d - 1] = Interval::at_least(cutoff);
    out.pieces.push_back(Piece{std::move(far), ConstantRule{ExtInt::neg_inf()}});
    return out;
}

inline void run_convergence(Context& c, CaseResult& r) {
    const std::size_t d = c.shape.d();
    const long long w = c.cfg.window;
    const Integer cutoff = rnd::uniform(c.engine, -2, 2);
    const NetSpec net = detail::draw_net(r, [&]() -> std::optional<NetSpec> {
        NetSpec n = cut_last_coordinate(rnd::random_net(c.engine, d, rnd::lattice_values), cutoff);
        if (!rnd::repair(n, c.shape, NetKind::open_lattice, c.engine)) {
            return std::nullopt;
        }
        return n;
    });

    std::optional<SeriesGenerator> gen;
    for (int attempt = 0; !gen && attempt < 100; ++attempt) {
        Region support;
        GeometricRule rule{rnd::unit_scaled(c.engine, c.prime, rnd::uniform(c.engine, -2, 2)), {}, 0};
        for (std::size_t k = 0; k < d; ++k) {
            // start the last coordinate below the cutoff so the tails have work to do
            const Integer lo = k + 1 == d ? Integer(cutoff - rnd::uniform(c.engine, 1, 4)) : Integer(rnd::uniform(c.engine, -3, 0));
            if (rnd::chance(c.engine, 30)) {
                support.box.push_back(Interval::at_least(lo));
                rule.exponent.emplace_back(rnd::uniform(c.engine, 0, 2));
            } else {
                support.box.push_back(Interval::between(lo, Integer(lo + rnd::uniform(c.engine, 0, 4))));
                rule.exponent.emplace_back(rnd::uniform(c.engine, -2, 2));
            }
        }
        rule.offset = rnd::uniform(c.engine, -2, 2);
        SeriesGenerator g(d, c.prime, std::move(support), std::move(rule));
        if (g.well_formed(c.shape)) {
            gen = std::move(g);
        } else {
            ++r.rejected;
        }
    }
    if (!gen) {
        throw error(errc::invalid_argument, "series generator rejected 100 candidates in a row");
    }

    // Random points, then the last slices (w, …, w, j) up to the top edge.
    std::vector<MultiIndex> schedule;
    for (int k = 0; k < 4; ++k) {
        schedule.push_back(detail::random_point(c.engine, d, w));
    }
    for (Integer j = cutoff - 3; j <= w; ++j) {
        MultiIndex a(std::vector<Integer>(d, Integer(w)));
        a[d - 1] = j;
        schedule.push_back(std::move(a));
    }
    std::sort(schedule.begin(), schedule.end(), InvLexLess{});
    schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());

    const Region window = Region::window(d, w);
    const std::vector<QExp> tails = convergence_check(*gen, net, schedule, window);
    MultiIndex settle(std::vector<Integer>(d, Integer(w)));
    settle[d - 1] = cutoff - 1;
    const LaurentElement full = gen->truncate(window);
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const std::string where = " at schedule point " + schedule[i].to_string() + "; net=" + detail::show(net);
        if (i > 0 && tails[i] > tails[i - 1]) {
            r.fail("tail exponent rises from " + tails[i - 1].to_string() + " to " + tails[i].to_string() + where);
            return;
        }
        if (invlex_compare(schedule[i], settle) >= 0 && !tails[i].is_zero()) {
            r.fail("tail exponent " + tails[i].to_string() + " is not -inf" + where);
            return;
        }
        // the gauge of the tail, found by membership search alone
        const QExp independent = gauge_eval(net, full - partial_sum(*gen, schedule[i], window));
        if (independent != tails[i]) {
            r.fail("tail exponent " + tails[i].to_string() + " but tail gauge " + independent.to_string() + where);
            return;
        }
    }
    ++r.tally[tails.front().is_zero() ? "zero_from_start" : "decaying"];
}

struct Corroborated {
    NetSpec net;
    NetKind kind;
};

/// Nets the first four suites feed to the library, with the kind each is
/// used as. Those the classifier accepts are checked on the window.
inline std::vector<Corroborated> nets_used(std::string_view suite, Context& c, CaseResult& scratch) {
    std::vector<Corroborated> out;
    if (suite == "gauge") {
        out.push_back({make_gauge(c, scratch).net, NetKind::open_lattice});
    } else if (suite == "classification_duality") {
        auto in = make_duality(c, scratch);
        out.push_back({polar_transform(in.lattice_side), NetKind::compactoid});
        out.push_back({polar_transform(in.bounded_side), NetKind::open_lattice});
        out.push_back({std::move(in.lattice_side), NetKind::open_lattice});
        out.push_back({std::move(in.bounded_side), NetKind::compactoid});
    } else if (suite == "polar_involution") {
        NetSpec net = make_involution(c, scratch);
        if (!detail::has_constant(net, ExtInt::pos_inf())) {
            out.push_back({net, NetKind::open_lattice});
        }
        if (!detail::has_constant(net, ExtInt::neg_inf())) {
            out.push_back({net, NetKind::bounded});
            out.push_back({net, NetKind::compactoid});
        }
    } else if (suite == "bicontinuity") {
        auto in = make_bicontinuity(c, scratch);
        out.push_back({reflection_net(in.b), NetKind::open_lattice});
        out.push_back({in.b, NetKind::bounded});
        out.push_back({std::move(in.b), NetKind::compactoid});
    }
    return out;
}

inline const std::vector<Suite>& suites() {
    // The corroboration suite has no runner of its own; see corroborate_case.
    static const std::vector<Suite> all{
        {"gauge", true, run_gauge},
        {"classification_duality", true, run_duality},
        {"polar_involution", false, run_involution},
        {"bicontinuity", false, run_bicontinuity},
        {"duality_round_trip", false, run_round_trip},
        {"ultrametric", false, run_ultrametric},
        {"bounded_multiplication", false, run_multiplication},
        {"convergence", false, run_convergence},
        {"corroboration", false, nullptr},
    };
    return all;
}

inline const Suite* find_suite(std::string_view name) {
    for (const auto& s : suites()) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

inline std::vector<FieldShape> shapes_for(const SuiteConfig& cfg, std::string_view suite) {
    if (suite != "convergence") {
        return cfg.shapes;
    }
    std::vector<FieldShape> out;
    std::copy_if(cfg.shapes.begin(), cfg.shapes.end(), std::back_inserter(out),
                 [](const FieldShape& s) { return s.r < s.n - 1; });
    return out;
}

inline std::size_t base_cases(const SuiteConfig& cfg, std::string_view suite) {
    const auto it = cfg.suite_cases.find(std::string(suite));
    return it == cfg.suite_cases.end() ? cfg.cases : it->second;
}

inline constexpr std::string_view corroborated_suites[] = {"gauge", "classification_duality", "polar_involution",
                                                           "bicontinuity"};

inline std::size_t case_count(const SuiteConfig& cfg, std::string_view suite) {
    if (suite == "corroboration") {
        std::size_t total = 0;
        for (const auto s : corroborated_suites) {
            total += case_count(cfg, s);
        }
        return total;
    }
    const Suite* s = find_suite(suite);
    const std::size_t shapes = shapes_for(cfg, suite).size();
    return s->per_shape ? base_cases(cfg, suite) * shapes : (shapes == 0 ? 0 : base_cases(cfg, suite));
}

/// The context for case `index` of a regular suite.
inline Context context_for(const SuiteConfig& cfg, std::string_view suite, std::size_t index) {
    const Suite* s = find_suite(suite);
    const auto shapes = shapes_for(cfg, suite);
    const std::size_t per = base_cases(cfg, suite);
    const FieldShape shape = s->per_shape ? shapes[index / per] : shapes[index % shapes.size()];
    rnd::Engine e = rnd::substream(cfg.seed, suite, index);
    Integer p = rnd::pick(e, cfg.primes);
    return Context{cfg, shape, std::move(p), std::move(e)};
}

/// Case `index` of a corroboration run stands for the same case of one of
/// the first four suites; its nets are regenerated and corroborated.
inline void corroborate_case(const SuiteConfig& cfg, std::size_t index, CaseResult& r) {
    for (const auto source : corroborated_suites) {
        const std::size_t n = case_count(cfg, source);
        if (index >= n) {
            index -= n;
            continue;
        }
        Context c = context_for(cfg, source, index);
        CaseResult scratch;
        for (const auto& [net, kind] : nets_used(source, c, scratch)) {
            if (!classify(net, c.shape, kind).holds) {
                ++r.tally["symbolic_false"];
                continue;
            }
            const Corroboration k = window_corroborate(net, c.shape, kind, Integer(corroboration_radius));
            if (k.counterexample) {
                r.fail(std::string(source) + " case " + std::to_string(index) + ": " + to_string(kind) +
                       " verdict true but clause " + k.clause + " fails at " + k.point->to_string() + " (value " +
                       k.value->to_string() + "); net=" + detail::show(net));
                return;
            }
            ++r.tally[k.insufficient ? "corroborated_insufficient" : "corroborated"];
        }
        return;
    }
    throw error(errc::invalid_argument, "case index out of range");
}

inline CaseResult run_case(const SuiteConfig& cfg, std::string_view suite, std::size_t index) {
    CaseResult r;
    try {
        if (suite == "corroboration") {
            corroborate_case(cfg, index, r);
        } else {
            Context c = context_for(cfg, suite, index);
            find_suite(suite)->run(c, r);
        }
    } catch (const error& e) {
        r.fail(std::string("unexpected error: ") + e.what());
    }
    return r;
}

// ---------------------------------------------------------------------------
// Runner and report

struct SuiteReport {
    std::string name;
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::size_t generated = 0;
    std::size_t rejected = 0;
    std::map<std::string, std::size_t> tally;
    std::optional<std::size_t> first_failure;
    std::string failure_detail;

    [[nodiscard]] bool ok() const noexcept { return passed == cases; }
};

inline SuiteReport run_suite(const SuiteConfig& cfg, std::string_view suite) {
    SuiteReport rep;
    rep.name = suite;
    rep.cases = case_count(cfg, suite);
    for (std::size_t i = 0; i < rep.cases; ++i) {
        CaseResult r = run_case(cfg, suite, i);
        rep.generated += r.generated;
        rep.rejected += r.rejected;
        for (const auto& [k, v] : r.tally) {
            rep.tally[k] += v;
        }
        if (r.pass) {
            ++rep.passed;
        } else if (!rep.first_failure) {
            rep.first_failure = i;
            rep.failure_detail = r.detail;
        }
    }
    return rep;
}

inline std::string replay_command(const std::string& config_path, std::string_view suite, std::size_t index) {
    return "hlf props --config " + config_path + " --suite " + std::string(suite) + " --case " + std::to_string(index);
}

inline std::string format_report(const SuiteConfig& cfg, const std::string& config_path,
                                 const std::vector<SuiteReport>& reports) {
    std::ostringstream out;
    out << "seed: " << cfg.seed << "\n";
    bool all = true;
    for (const auto& rep : reports) {
        const std::string k = rep.name + ".";
        out << k << "cases: " << rep.cases << "\n";
        out << k << "passed: " << rep.passed << "\n";
        if (rep.generated > 0) {
            out << k << "generator_rejections: " << rep.rejected << "/" << rep.generated << "\n";
        }
        for (const auto& [name, count] : rep.tally) {
            out << k << name << ": " << count << "\n";
        }
        out << k << "status: " << (rep.ok() ? "pass" : "fail") << "\n";
        if (rep.first_failure) {
            out << k << "first_failure: case " << *rep.first_failure << ": " << rep.failure_detail << "\n";
            out << k << "replay: " << replay_command(config_path, rep.name, *rep.first_failure) << "\n";
        }
        all = all && rep.ok();
    }
    out << "result: " << (all ? "pass" : "fail") << "\n";
    return out.str();
}

inline std::string format_case(std::string_view suite, std::size_t index, const CaseResult& r) {
    std::ostringstream out;
    out << "suite: " << suite << "\n";
    out << "case: " << index << "\n";
    out << "result: " << (r.pass ? "pass" : "fail") << "\n";
    if (!r.pass) {
        out << "detail: " << r.detail << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Configuration

inline SuiteConfig config_from_json(const io::json& j) {
    auto bad = [](const std::string& what) -> void { throw error(errc::invalid_argument, "invalid config: " + what); };
    auto small = [&](const io::json& v, const char* what, long long lo, long long hi) {
        const Integer x = io::integer_from_json(v, what);
        if (x < lo || x > hi) {
            bad(std::string(what) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
        return static_cast<long long>(x);
    };
    auto list = [&](const char* name) -> const io::json& {
        const auto& v = io::detail::field(j, name);
        if (!v.is_array() || v.empty()) {
            bad(std::string(name) + " must be a nonempty list");
        }
        return v;
    };

    SuiteConfig cfg;
    const Integer seed = io::integer_from_json(io::detail::field(j, "seed"), "seed");
    if (seed < 0 || seed > Integer(std::numeric_limits<std::uint64_t>::max())) {
        bad("seed must be a 64-bit unsigned integer");
    }
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.cases = static_cast<std::size_t>(small(io::detail::field(j, "cases"), "cases", 0, 100000000));
    if (cfg.cases < 1) {
        bad("cases must be at least 1");
    }
    cfg.window = small(io::detail::field(j, "window"), "window", 0, 1000);
    if (cfg.window < 4) {
        bad("window must be at least 4");
    }
    for (const auto& v : list("dims")) {
        cfg.dims.push_back(static_cast<std::size_t>(small(v, "dimension", 1, 8)));
    }
    for (const auto& v : list("primes")) {
        Integer p = io::integer_from_json(v, "prime");
        if (!is_prime(p)) {
            bad(p.str() + " is not prime");
        }
        cfg.primes.push_back(std::move(p));
    }
    for (const auto& v : list("shapes")) {
        if (!v.is_array() || v.size() != 2) {
            bad("shapes are [n, r] pairs");
        }
        const FieldShape s{static_cast<std::size_t>(small(v[0], "n", 2, 9)),
                           static_cast<std::size_t>(small(v[1], "r", 0, 8))};
        if (s.r > s.n - 1) {
            bad("shape (" + std::to_string(s.n) + ", " + std::to_string(s.r) + ") needs r <= n-1");
        }
        if (std::find(cfg.dims.begin(), cfg.dims.end(), s.d()) == cfg.dims.end()) {
            bad("shape (" + std::to_string(s.n) + ", " + std::to_string(s.r) + ") has n-1 outside dims");
        }
        cfg.shapes.push_back(s);
    }
    if (j.contains("suite_cases")) {
        const auto& sc = j.at("suite_cases");
        if (!sc.is_object()) {
            bad("suite_cases must be an object");
        }
        for (const auto& [name, v] : sc.items()) {
            if (find_suite(name) == nullptr || name == "corroboration") {
                bad("unknown suite \"" + name + "\" in suite_cases");
            }
            cfg.suite_cases[name] = static_cast<std::size_t>(small(v, "suite case count", 1, 100000000));
        }
    }
    if (j.contains("fault")) {
        if (!j.at("fault").is_string()) {
            bad("fault must be a string");
        }
        cfg.fault = j.at("fault").get<std::string>();
        const auto& names = fault_names();
        if (std::find(names.begin(), names.end(), cfg.fault) == names.end()) {
            bad("unknown fault \"" + cfg.fault + "\"");
        }
    }
    return cfg;
}

inline SuiteConfig read_config(const std::string& path) { return config_from_json(io::parse(io::read_file(path))); }

} // namespace hlf::props
