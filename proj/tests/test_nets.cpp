#include <hlf/convolve.hpp>
#include <hlf/random.hpp>

#include <gtest/gtest.h>

using namespace hlf;

namespace {

Piece piece(std::vector<Interval> box, ValueRule rule) { return Piece{Region{std::move(box)}, std::move(rule)}; }

ConstantRule constant(long long v) { return ConstantRule{ExtInt(v)}; }
ConstantRule pos_inf() { return ConstantRule{ExtInt::pos_inf()}; }

AffineRule affine(std::vector<long long> coeffs, long long offset) {
    AffineRule a;
    for (auto c : coeffs) {
        a.coeffs.emplace_back(c);
    }
    a.offset = offset;
    return a;
}

/// O[[t]] inside K((t)): +∞ below 0, 0 from 0 on.
NetSpec ot_net() {
    return NetSpec{1, {piece({Interval::at_most(-1)}, pos_inf()), piece({Interval::at_least(0)}, constant(0))}};
}

// Evaluation by scanning for the first covering piece, kept apart from the
// library's tabulate (which fills piece by piece).
ExtInt scan_eval(const NetSpec& net, const MultiIndex& a) {
    for (const auto& p : net.pieces) {
        bool in = true;
        for (std::size_t c = 0; c < a.dim(); ++c) {
            const auto& iv = p.region.box[c];
            in = in && (!iv.lo || *iv.lo <= a[c]) && (!iv.hi || a[c] <= *iv.hi);
        }
        if (in) {
            if (const auto* k = std::get_if<ConstantRule>(&p.rule)) {
                return k->value;
            }
            const auto& aff = std::get<AffineRule>(p.rule);
            Integer v = aff.offset;
            for (std::size_t c = 0; c < a.dim(); ++c) {
                v += aff.coeffs[c] * a[c];
            }
            return v;
        }
    }
    ADD_FAILURE() << "no piece covers " << a.to_string();
    return ExtInt::neg_inf();
}

} // namespace

TEST(Partition, Examples) {
    const NetSpec halves{1, {piece({Interval::at_most(-1)}, pos_inf()), piece({Interval::at_least(0)}, affine({-1}, 0))}};
    EXPECT_TRUE(validate_partition(halves).ok());

    const NetSpec half{1, {piece({Interval::at_least(0)}, constant(0))}};
    const auto gap = validate_partition(half);
    ASSERT_EQ(gap.defects.size(), 1u);
    EXPECT_EQ(gap.defects[0].what, PartitionDefect::kind::gap);
    EXPECT_EQ(*gap.defects[0].witness, MultiIndex{-1});

    const NetSpec overlap{2,
                          {piece({Interval::at_most(0), Interval::all()}, constant(0)),
                           piece({Interval::at_least(0), Interval::at_most(0)}, constant(1)),
                           piece({Interval::at_least(1), Interval::at_least(1)}, constant(2))}};
    const auto ov = validate_partition(overlap);
    ASSERT_FALSE(ov.ok());
    bool found = false;
    for (const auto& d : ov.defects) {
        if (d.what == PartitionDefect::kind::overlap) {
            found = true;
            EXPECT_EQ(*d.witness, (MultiIndex{0, 0}));
        }
    }
    EXPECT_TRUE(found);
    EXPECT_THROW(require_valid(overlap), error);
}

TEST(Partition, MalformedPieces) {
    const NetSpec wrong_dim{2, {piece({Interval::all()}, constant(0))}};
    EXPECT_FALSE(validate_partition(wrong_dim).ok());
    const NetSpec bad_affine{1, {piece({Interval::all()}, affine({1, 2}, 0))}};
    EXPECT_FALSE(validate_partition(bad_affine).ok());
    const NetSpec empty_box{1,
                            {piece({Interval::all()}, constant(0)), piece({Interval::between(3, 2)}, constant(0))}};
    EXPECT_FALSE(validate_partition(empty_box).ok());
}

TEST(Partition, DroppingAPieceLeavesAnUncoveredWitness) {
    rnd::Engine e(5);
    for (int k = 0; k < 300; ++k) {
        const std::size_t d = 1 + k % 3;
        NetSpec net = rnd::random_net(e, d);
        ASSERT_TRUE(validate_partition(net).ok());
        const auto drop = static_cast<std::size_t>(rnd::uniform(e, 0, static_cast<long long>(net.pieces.size()) - 1));
        const Region dropped = net.pieces[drop].region;
        net.pieces.erase(net.pieces.begin() + static_cast<long>(drop));
        const auto rep = validate_partition(net);
        ASSERT_FALSE(rep.ok());
        ASSERT_EQ(rep.defects[0].what, PartitionDefect::kind::gap);
        const MultiIndex w = *rep.defects[0].witness;
        EXPECT_TRUE(dropped.contains(w));
        EXPECT_FALSE(locate(net, w).has_value());
    }
}

TEST(Partition, DuplicatingAPieceIsAnOverlap) {
    rnd::Engine e(6);
    for (int k = 0; k < 200; ++k) {
        NetSpec net = rnd::random_net(e, 1 + k % 3);
        net.pieces.push_back(net.pieces.front());
        const auto rep = validate_partition(net);
        ASSERT_FALSE(rep.ok());
        EXPECT_EQ(rep.defects[0].what, PartitionDefect::kind::overlap);
        EXPECT_TRUE(net.pieces.front().region.contains(*rep.defects[0].witness));
    }
}

TEST(NetEval, Examples) {
    const NetSpec net{1, {piece({Interval::at_most(-1)}, pos_inf()), piece({Interval::at_least(0)}, affine({-1}, 0))}};
    EXPECT_EQ(net_eval(net, {3}), ExtInt(-3));
    EXPECT_EQ(net_eval(net, {-2}), ExtInt::pos_inf());
    const NetSpec aff{2, {piece({Interval::all(), Interval::all()}, affine({1, -2}, 5))}};
    EXPECT_EQ(net_eval(aff, {2, 1}), ExtInt(1 * 2 - 2 * 1 + 5));
    EXPECT_THROW((void)net_eval(aff, {1}), error);
}

TEST(NetEval, TabulateAgreesWithScan) {
    rnd::Engine e(7);
    for (int k = 0; k < 200; ++k) {
        const std::size_t d = 1 + k % 3;
        const NetSpec net = rnd::random_net(e, d);
        const Region window = Region::window(d, d == 3 ? 3 : 5);
        const WindowTable t = tabulate(net, window);
        for_each_point(window, [&](const MultiIndex& a) {
            EXPECT_EQ(t.at(a), scan_eval(net, a));
            EXPECT_EQ(net_eval(net, a), t.at(a));
        });
    }
}

TEST(Polar, Examples) {
    EXPECT_EQ(polar_transform(NetSpec::constant(1, 0)), NetSpec::constant(1, 1));
    // {i < 0 → +∞, i ≥ 0 → −i}: 1 − n(−i) is 1 − i for i ≤ 0 and −∞ for i > 0.
    const NetSpec net{1, {piece({Interval::at_most(-1)}, pos_inf()), piece({Interval::at_least(0)}, affine({-1}, 0))}};
    const NetSpec polar = polar_transform(net);
    for (long long i = -10; i <= 10; ++i) {
        const ExtInt want = i <= 0 ? ExtInt(1 - i) : ExtInt::neg_inf();
        EXPECT_EQ(net_eval(polar, {i}), want) << i;
    }
}

TEST(Polar, InvolutionAndFormulaOnWindow) {
    rnd::Engine e(8);
    for (int k = 0; k < 200; ++k) {
        const std::size_t d = 1 + k % 2;
        const NetSpec net = rnd::random_net(e, d);
        const NetSpec polar = polar_transform(net);
        EXPECT_TRUE(validate_partition(polar).ok());
        const Region window = Region::window(d, 8);
        EXPECT_EQ(tabulate(polar_transform(polar), window), tabulate(net, window));
        for_each_point(window, [&](const MultiIndex& a) {
            EXPECT_EQ(scan_eval(polar, a), ExtInt(1) - scan_eval(net, -a));
            EXPECT_EQ(scan_eval(reflection_net(net), a), -scan_eval(net, -a));
        });
    }
}

TEST(Stabilization, RadiusCoversEveryBreakpoint) {
    const NetSpec net{1, {piece({Interval::at_most(-4)}, constant(0)), piece({Interval::at_least(-3)}, constant(1))}};
    EXPECT_EQ(stabilization_radius(net), Integer(4));
    EXPECT_EQ(stabilization_radius(NetSpec::constant(3, 0)), Integer(0));
}

TEST(Convolve, Examples) {
    const Region w{{Interval::between(-2, 4)}};
    const WindowTable t = min_plus_convolve(ot_net(), ot_net(), w);
    for (long long i = -2; i <= 4; ++i) {
        EXPECT_EQ(t.at({i}), i >= 0 ? ExtInt(0) : ExtInt::pos_inf()) << i;
    }

    const WindowTable c = min_plus_convolve(NetSpec::constant(1, 0), NetSpec::constant(1, 1), w);
    for (const auto& v : c.values()) {
        EXPECT_EQ(v, ExtInt(1));
    }

    // {i < 0 → +∞, i ≥ 0 → i} with itself: every decomposition 3 = β + γ with
    // β, γ ≥ 0 costs β + γ = 3.
    const NetSpec lin{1, {piece({Interval::at_most(-1)}, pos_inf()), piece({Interval::at_least(0)}, affine({1}, 0))}};
    EXPECT_EQ(min_plus_convolve(lin, lin, Region{{Interval::point(3)}}).at({3}), ExtInt(3));

    // inf over β of β + 0 is unbounded below
    const NetSpec slope{1, {piece({Interval::all()}, affine({1}, 0))}};
    EXPECT_EQ(min_plus_convolve(slope, NetSpec::constant(1, 0), w).at({0}), ExtInt::neg_inf());
}

TEST(Convolve, IndeterminateSum) {
    const NetSpec top = NetSpec::constant(1, ExtInt::pos_inf());
    const NetSpec bottom = NetSpec::constant(1, ExtInt::neg_inf());
    try {
        (void)min_plus_convolve(top, bottom, Region::window(1, 1));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::indeterminate_sum);
    }
}

TEST(Convolve, MatchesEnumerationOverEnclosingBox) {
    // For bounded nets of a field with r = 0 every piece reaching −∞ along a
    // coordinate is +∞, so with R the stabilization radius only β with
    // −R ≤ β_c and −R ≤ α_c − β_c can contribute finite sums. Outside that box
    // some summand is +∞. Enumerating the box is therefore exact.
    rnd::Engine e(9);
    for (int k = 0; k < 150; ++k) {
        const std::size_t d = 1 + k % 2;
        const FieldShape shape{d + 1, 0};
        NetSpec n1 = rnd::random_net(e, d, rnd::bounded_values);
        NetSpec n2 = rnd::random_net(e, d, rnd::bounded_values);
        ASSERT_TRUE(rnd::repair(n1, shape, NetKind::bounded, e));
        ASSERT_TRUE(rnd::repair(n2, shape, NetKind::bounded, e));
        const Integer big = std::max(stabilization_radius(n1), stabilization_radius(n2)) + 1;
        const long long radius = 3;
        const Region window = Region::window(d, radius);
        const WindowTable got = min_plus_convolve(n1, n2, window);
        for_each_point(window, [&](const MultiIndex& alpha) {
            Region betas;
            for (std::size_t c = 0; c < d; ++c) {
                betas.box.push_back(Interval::between(Integer(-big), Integer(alpha[c] + big)));
            }
            ExtInt best = ExtInt::pos_inf();
            for_each_point(betas, [&](const MultiIndex& beta) {
                best = min(best, scan_eval(n1, beta) + scan_eval(n2, alpha - beta));
            });
            EXPECT_EQ(got.at(alpha), best) << alpha.to_string();
        });
    }
}

TEST(Convolve, IsCommutative) {
    rnd::Engine e(10);
    for (int k = 0; k < 100; ++k) {
        const std::size_t d = 1 + k % 3;
        const NetSpec a = rnd::random_net(e, d, rnd::bounded_values);
        const NetSpec b = rnd::random_net(e, d, rnd::bounded_values);
        const Region w = Region::window(d, 2);
        EXPECT_EQ(min_plus_convolve(a, b, w), min_plus_convolve(b, a, w));
    }
}
