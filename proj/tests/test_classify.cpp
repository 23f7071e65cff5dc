#include <hlf/classify.hpp>
#include <hlf/io.hpp>
#include <hlf/random.hpp>

#include <gtest/gtest.h>

using namespace hlf;

namespace {

Piece piece(std::vector<Interval> box, ValueRule rule) { return Piece{Region{std::move(box)}, std::move(rule)}; }
ConstantRule constant(long long v) { return ConstantRule{ExtInt(v)}; }
ConstantRule pos_inf() { return ConstantRule{ExtInt::pos_inf()}; }
ConstantRule neg_inf() { return ConstantRule{ExtInt::neg_inf()}; }
AffineRule affine(std::vector<long long> coeffs, long long offset) {
    AffineRule a;
    for (auto c : coeffs) {
        a.coeffs.emplace_back(c);
    }
    a.offset = offset;
    return a;
}

const FieldShape k_t{2, 0};   // K((t))
const FieldShape k_tt{2, 1};  // K{{t}}

// Brute-force oracle. Past the stabilization radius R every axis-parallel
// ray stays in one piece, so each clause can be read off the grid
// [−R−2, R+2]^d: points with a coordinate at ±(R+1) stand for everything
// beyond, and the step from ±(R+1) to ±(R+2) exposes the slope there.
class GridOracle {
public:
    GridOracle(const NetSpec& net, const FieldShape& shape) : net_(net), shape_(shape) {
        const long long r = static_cast<long long>(stabilization_radius(net));
        far_ = r + 1;
        grid_ = Region::window(net.dim, Integer(r + 2));
    }

    bool lattice() const {
        bool ok = true;
        for_each_point(grid_, [&](const MultiIndex& a) {
            for (std::size_t l = 1; l <= net_.dim; ++l) {
                if (!shape_.mixed(l)) {
                    if (a[l - 1] == far_ && !at(a).is_neg_inf()) {
                        ok = false;
                    }
                    continue;
                }
                // bounded above along every coordinate c ≤ l
                for (std::size_t c = 1; c <= l; ++c) {
                    ok = ok && !grows(a, c, +1, +1) && !grows(a, c, -1, +1);
                }
                // sup over I(k, tail) tends to −∞ as k → +∞
                if (a[l - 1] == far_ && at(a).is_finite() && !(step(a, l, +1) < at(a))) {
                    ok = false;
                }
            }
        });
        return ok;
    }

    bool bounded() const {
        bool ok = true;
        for_each_point(grid_, [&](const MultiIndex& a) {
            for (std::size_t l = 1; l <= net_.dim; ++l) {
                if (!shape_.mixed(l)) {
                    if (a[l - 1] == -far_ && !at(a).is_pos_inf()) {
                        ok = false;
                    }
                    continue;
                }
                for (std::size_t c = 1; c <= l; ++c) {
                    ok = ok && !grows(a, c, +1, -1) && !grows(a, c, -1, -1);
                }
            }
        });
        return ok;
    }

    bool compactoid() const {
        if (!bounded()) {
            return false;
        }
        bool ok = true;
        for_each_point(grid_, [&](const MultiIndex& a) {
            for (std::size_t l = 1; l <= shape_.r; ++l) {
                if (a[l - 1] == -far_ && at(a).is_finite() && !(step(a, l, -1) > at(a))) {
                    ok = false;
                }
            }
        });
        return ok;
    }

private:
    ExtInt at(const MultiIndex& a) const { return net_eval(net_, a); }

    ExtInt step(const MultiIndex& a, std::size_t c, int dir) const {
        MultiIndex b = a;
        b[c - 1] += dir;
        return at(b);
    }

    // Is the value finite at the far point a (coordinate c at dir·(R+1)) and
    // moving outward along c in the direction `sense` (+1 up, −1 down)?
    bool grows(const MultiIndex& a, std::size_t c, int dir, int sense) const {
        if (a[c - 1] != dir * far_ || !at(a).is_finite()) {
            return false;
        }
        const ExtInt next = step(a, c, dir);
        return sense > 0 ? next > at(a) : next < at(a);
    }

    const NetSpec& net_;
    FieldShape shape_;
    long long far_ = 1;
    Region grid_;
};

} // namespace

TEST(OpenLattice, Examples) {
    const NetSpec a{1, {piece({Interval::at_most(0)}, constant(0)), piece({Interval::at_least(1)}, neg_inf())}};
    EXPECT_TRUE(classify_open_lattice(a, k_t).holds);

    const Verdict zero = classify_open_lattice(NetSpec::constant(1, 0), k_tt);
    ASSERT_FALSE(zero.holds);
    EXPECT_EQ(zero.witness->clause, Clause::limit);
    EXPECT_EQ(zero.witness->l, 1u);
    EXPECT_EQ(zero.witness->direction, std::vector<int>{1});

    const NetSpec c{1, {piece({Interval::at_most(-1)}, constant(0)), piece({Interval::at_least(0)}, affine({-1}, 0))}};
    EXPECT_TRUE(classify_open_lattice(c, k_tt).holds);
}

TEST(OpenLattice, WitnessesForEachClause) {
    const Verdict v = classify_open_lattice(NetSpec::constant(1, 0), k_t);
    ASSERT_FALSE(v.holds);
    EXPECT_EQ(v.witness->clause, Clause::eventually_infinite);

    const NetSpec up{1, {piece({Interval::all()}, affine({1}, 0))}};
    const Verdict b = classify_open_lattice(up, k_tt);
    ASSERT_FALSE(b.holds);
    EXPECT_EQ(b.witness->clause, Clause::bounded);

    // tails: in d = 2 with r = 1 the first coordinate needs its clause for
    // every fixed second coordinate
    const NetSpec mixed{2,
                        {piece({Interval::all(), Interval::at_most(-1)}, affine({-1, 0}, 0)),
                         piece({Interval::at_most(-1), Interval::at_least(0)}, constant(0)),
                         piece({Interval::at_least(0), Interval::at_least(0)}, constant(0))}};
    const Verdict m = classify_open_lattice(mixed, FieldShape{3, 1});
    ASSERT_FALSE(m.holds);
    EXPECT_EQ(m.witness->l, 1u);
    ASSERT_EQ(m.witness->tail.size(), 1u);
}

TEST(OpenLattice, RejectsPlusInfinity) {
    try {
        (void)classify_open_lattice(NetSpec::constant(1, ExtInt::pos_inf()), k_t);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::invalid_net_values);
    }
}

TEST(Bounded, Examples) {
    const NetSpec ot{1, {piece({Interval::at_most(-1)}, pos_inf()), piece({Interval::at_least(0)}, constant(0))}};
    EXPECT_TRUE(classify_bounded(ot, k_t).holds);
    EXPECT_TRUE(classify_bounded(NetSpec::constant(1, 0), k_tt).holds);
    const NetSpec down{1, {piece({Interval::at_most(-1)}, affine({1}, 0)), piece({Interval::at_least(0)}, constant(0))}};
    const Verdict v = classify_bounded(down, k_tt);
    ASSERT_FALSE(v.holds);
    EXPECT_EQ(v.witness->clause, Clause::bounded);
    EXPECT_EQ(v.witness->direction, std::vector<int>{-1});
    EXPECT_THROW((void)classify_bounded(NetSpec::constant(1, ExtInt::neg_inf()), k_t), error);
}

TEST(Compactoid, Examples) {
    const Verdict zero = classify_compactoid(NetSpec::constant(1, 0), k_tt);
    ASSERT_FALSE(zero.holds);
    EXPECT_EQ(zero.witness->clause, Clause::limit);
    EXPECT_EQ(zero.witness->direction, std::vector<int>{-1});

    const NetSpec abs{1, {piece({Interval::at_most(-1)}, affine({-1}, 0)), piece({Interval::at_least(0)}, affine({1}, 0))}};
    EXPECT_TRUE(classify_compactoid(abs, k_tt).holds);

    const NetSpec ot{1, {piece({Interval::at_most(-1)}, pos_inf()), piece({Interval::at_least(0)}, constant(0))}};
    EXPECT_TRUE(classify_compactoid(ot, k_t).holds);
}

TEST(Classifier, ShapeAndPartitionChecks) {
    EXPECT_THROW((void)classify_open_lattice(NetSpec::constant(2, 0), k_t), error);
    EXPECT_THROW((void)classify_open_lattice(NetSpec::constant(1, 0), FieldShape{2, 2}), error);
    const NetSpec gap{1, {piece({Interval::at_least(0)}, constant(0))}};
    try {
        (void)classify_bounded(gap, k_t);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::invalid_partition);
    }
}

TEST(Classifier, AgreesWithGridOracle) {
    rnd::Engine e(21);
    std::size_t seen_true = 0;
    std::size_t seen_false = 0;
    for (int k = 0; k < 900; ++k) {
        const std::size_t d = 1 + k % 3;
        const FieldShape shape{d + 1, static_cast<std::size_t>(k / 3) % (d + 1)};
        const bool lattice_side = k % 2 == 0;
        NetSpec net = rnd::random_net(e, d, lattice_side ? rnd::lattice_values : rnd::bounded_values);
        if (rnd::chance(e, 50)) {
            ASSERT_TRUE(rnd::repair(net, shape, lattice_side ? NetKind::open_lattice : NetKind::compactoid, e));
        }
        const GridOracle oracle(net, shape);
        if (lattice_side) {
            const bool got = classify_open_lattice(net, shape).holds;
            EXPECT_EQ(got, oracle.lattice()) << io::to_json(net);
            (got ? seen_true : seen_false)++;
        } else {
            EXPECT_EQ(classify_bounded(net, shape).holds, oracle.bounded());
            const bool got = classify_compactoid(net, shape).holds;
            EXPECT_EQ(got, oracle.compactoid());
            (got ? seen_true : seen_false)++;
        }
    }
    EXPECT_GT(seen_true, 100u);
    EXPECT_GT(seen_false, 100u);
}

TEST(Classifier, WitnessPointLiesInItsPiece) {
    rnd::Engine e(22);
    for (int k = 0; k < 300; ++k) {
        const std::size_t d = 1 + k % 3;
        const FieldShape shape{d + 1, static_cast<std::size_t>(k) % (d + 1)};
        const NetSpec net = rnd::random_net(e, d, rnd::lattice_values);
        const Verdict v = classify_open_lattice(net, shape);
        if (v.holds) {
            continue;
        }
        const Witness& w = *v.witness;
        EXPECT_TRUE(net.pieces[w.piece].region.contains(w.point));
        EXPECT_EQ(w.tail.size(), d - w.l);
        for (std::size_t i = 0; i < w.tail.size(); ++i) {
            EXPECT_EQ(w.tail[i], w.point[w.l + i]);
        }
    }
}

TEST(Classifier, PolarDuality) {
    rnd::Engine e(23);
    for (int k = 0; k < 600; ++k) {
        const std::size_t d = 1 + k % 3;
        const FieldShape shape{d + 1, static_cast<std::size_t>(k / 3) % (d + 1)};
        NetSpec n = rnd::random_net(e, d, rnd::lattice_values);
        if (k % 2 == 0) {
            ASSERT_TRUE(rnd::repair(n, shape, NetKind::open_lattice, e));
        }
        EXPECT_EQ(classify_open_lattice(n, shape).holds, classify_compactoid(polar_transform(n), shape).holds);
        NetSpec b = rnd::random_net(e, d, rnd::bounded_values);
        if (k % 2 == 0) {
            ASSERT_TRUE(rnd::repair(b, shape, NetKind::compactoid, e));
        }
        EXPECT_EQ(classify_compactoid(b, shape).holds, classify_open_lattice(polar_transform(b), shape).holds);
    }
}

TEST(Corroborate, Examples) {
    const Corroboration zero = window_corroborate(NetSpec::constant(1, 0), k_tt, NetKind::open_lattice, 10);
    EXPECT_FALSE(zero.counterexample);
    EXPECT_TRUE(zero.insufficient);

    const NetSpec a{1, {piece({Interval::at_most(0)}, constant(0)), piece({Interval::at_least(1)}, neg_inf())}};
    const Corroboration ok = window_corroborate(a, k_t, NetKind::open_lattice, 10);
    EXPECT_FALSE(ok.counterexample);
    EXPECT_FALSE(ok.insufficient);

    const Corroboration bad = window_corroborate(NetSpec::constant(1, 0), k_t, NetKind::open_lattice, 10);
    EXPECT_TRUE(bad.counterexample);
    EXPECT_EQ(*bad.point, MultiIndex{10});
    EXPECT_EQ(*bad.value, ExtInt(0));

    // breakpoints beyond the window: nothing can be decided
    const NetSpec late{1, {piece({Interval::at_most(40)}, constant(0)), piece({Interval::at_least(41)}, neg_inf())}};
    const Corroboration early = window_corroborate(late, k_t, NetKind::open_lattice, 10);
    EXPECT_FALSE(early.counterexample);
    EXPECT_TRUE(early.insufficient);
}

TEST(Corroborate, FindsFalseVerdictsWithWitnessesInTheWindow) {
    rnd::Engine e(24);
    for (int k = 0; k < 300; ++k) {
        const std::size_t d = 1 + k % 3;
        const FieldShape shape{d + 1, 0};
        const NetSpec net = rnd::random_net(e, d, rnd::lattice_values);
        const Verdict v = classify_open_lattice(net, shape);
        const Corroboration c = window_corroborate(net, shape, NetKind::open_lattice, 10);
        // for r = 0 the window decides everything once it passes the breakpoints
        EXPECT_FALSE(c.insufficient);
        EXPECT_EQ(c.counterexample, !v.holds);
    }
}
