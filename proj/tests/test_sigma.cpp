#include <gtest/gtest.h>

#include "frobint/fixture.hpp"
#include "frobint/sigma.hpp"

#include <random>

using namespace frobint;

namespace {

const RQField K5(1, -1);

using M2 = std::array<RQInt, 4>;

M2 mmul(const RQField& K, const M2& x, const M2& y) {
    return {K.add(K.mul(x[0], y[0]), K.mul(x[1], y[2])), K.add(K.mul(x[0], y[1]), K.mul(x[1], y[3])),
            K.add(K.mul(x[2], y[0]), K.mul(x[3], y[2])), K.add(K.mul(x[2], y[1]), K.mul(x[3], y[3]))};
}

}  // namespace

TEST(BuildSigma, Examples) {
    const FrobData f59 = make_hp(K5, {4, 4}, 59);
    const OrderSpec s59 = make_order_spec(K5, K5.ideal({2, 0}), f59);
    const SigmaMatrix m = build_sigma(K5, s59);
    // -(1 - (4+4a) + 59)/2 = -(56 - 4a)/2
    EXPECT_EQ(m.m12, (RQInt{-28, 2}));
    EXPECT_EQ(m.str(), "[[1, -28+2*a], [2, 3+4*a]]");
    EXPECT_EQ(m.trace(K5), f59.ap);
    EXPECT_EQ(m.det(K5), (RQInt{59, 0}));

    const SigmaMatrix sc = build_sigma_scalar(K5, {1, 2}, make_hp(K5, {2, 4}, {5, 0}, 5, 5));
    EXPECT_EQ(sc.str(), "[[1+2*a, 0], [0, 1+2*a]]");
    EXPECT_EQ(sc.kind, SigmaKind::Scalar);
    EXPECT_THROW(build_sigma_scalar(K5, {1, 1}, make_hp(K5, {2, 4}, {5, 0}, 5, 5)), SigmaError);

    const OrderSpec s1 = make_order_spec(K5, K5.unit_ideal(), f59);
    const SigmaMatrix c = build_sigma(K5, s1);
    EXPECT_EQ(c.kind, SigmaKind::Companion);
    EXPECT_EQ(c.m11, (RQInt{0, 0}));
    EXPECT_EQ(c.m12, (RQInt{-59, 0}));
    EXPECT_EQ(c.m21, (RQInt{1, 0}));
    EXPECT_EQ(c.m22, f59.ap);
}

TEST(BuildSigma, InvalidSpecRejected) {
    OrderSpec bad = make_order_spec(K5, K5.ideal({2, 0}), make_hp(K5, {4, 4}, 59));
    bad.u = {0, 0};
    EXPECT_THROW(build_sigma(K5, bad), SigmaError);
}

TEST(VerifySigma, Examples) {
    const OrderSpec s59 = make_order_spec(K5, K5.ideal({2, 0}), make_hp(K5, {4, 4}, 59));
    SigmaMatrix m = build_sigma(K5, s59);
    auto r = verify_sigma(K5, m, s59);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.cofactor[0], (RQInt{0, 0}));
    EXPECT_EQ(r.cofactor[1], (RQInt{-14, 1}));
    EXPECT_EQ(r.cofactor[2], (RQInt{1, 0}));
    EXPECT_EQ(r.cofactor[3], (RQInt{1, 2}));

    m.m12 = K5.add(m.m12, {1, 0});
    auto t = verify_sigma(K5, m, s59);
    EXPECT_FALSE(t.ok());
    EXPECT_FALSE(t.det_ok);

    const OrderSpec s67 = make_order_spec(K5, K5.ideal({2, 3}), make_hp(K5, {-4, 2}, 67));
    EXPECT_TRUE(verify_sigma(K5, build_sigma(K5, s67), s67).ok());
    // with the printed u = 9+a and b = 2+3a
    OrderSpec printed = s67;
    printed.u = {9, 1};
    printed.b_gen = {2, 3};
    EXPECT_TRUE(verify_sigma(K5, build_sigma(K5, printed), printed).ok());
}

TEST(SigmaProperty, CharpolyAndCofactorOnAllDivisors) {
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<std::int64_t> c(-40, 40);
    int checked = 0;
    for (const RQField& K : {K5, RQField(3, 1), RQField(0, -2)}) {
        for (int it = 0; it < 300; ++it) {
            const std::int64_t p = 101;
            const FrobData f = make_hp(K, {c(rng), c(rng)}, p);
            if (f.disc.is_zero()) continue;
            auto cond = compute_bOL(K, f);
            for (const RQIdeal& b : order_divisors(K, cond)) {
                const OrderSpec s = make_order_spec(K, b, f);
                const SigmaMatrix m = build_sigma(K, s);
                EXPECT_EQ(m.trace(K), f.ap);
                EXPECT_EQ(m.det(K), f.sp);
                EXPECT_TRUE(verify_sigma(K, m, s).ok());
                if (b.is_unit()) {
                    EXPECT_EQ(m.kind, SigmaKind::Companion);
                }
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 500);
}

TEST(SigmaProperty, ConjugationKeepsTraceAndDet) {
    std::mt19937_64 rng(73);
    std::uniform_int_distribution<std::int64_t> c(-3, 3);
    const OrderSpec s = make_order_spec(K5, K5.ideal({2, 0}), make_hp(K5, {4, 4}, 59));
    const SigmaMatrix m = build_sigma(K5, s);
    const M2 sig{m.m11, m.m12, m.m21, m.m22};
    int done = 0;
    while (done < 200) {
        const M2 g{RQInt{c(rng), c(rng)}, RQInt{c(rng), c(rng)}, RQInt{c(rng), c(rng)}, RQInt{c(rng), c(rng)}};
        const RQInt det = K5.sub(K5.mul(g[0], g[3]), K5.mul(g[1], g[2]));
        if (!K5.is_unit(det)) continue;
        const RQInt di = K5.div_exact({1, 0}, det).value();
        const M2 gi{K5.mul(g[3], di), K5.neg(K5.mul(g[1], di)), K5.neg(K5.mul(g[2], di)), K5.mul(g[0], di)};
        const M2 h = mmul(K5, mmul(K5, g, sig), gi);
        EXPECT_EQ(K5.add(h[0], h[3]), s.frob.ap);
        EXPECT_EQ(K5.sub(K5.mul(h[0], h[3]), K5.mul(h[1], h[2])), s.frob.sp);
        ++done;
    }
}

TEST(ScalarAction, Examples) {
    const RQIdeal two = K5.ideal({2, 0}), l5 = K5.ideal({1, 2});
    EXPECT_TRUE(scalar_action_on_torsion(K5, K5.unit_ideal(), two, 887));
    EXPECT_TRUE(scalar_action_on_torsion(K5, two, two, 887));
    EXPECT_FALSE(scalar_action_on_torsion(K5, two, l5, 31));
    EXPECT_FALSE(splits_completely(K5, two, K5.unit_ideal(), 941));
    EXPECT_TRUE(splits_completely(K5, K5.unit_ideal(), K5.unit_ideal(), 941));
    EXPECT_THROW(scalar_action_on_torsion(K5, l5, l5, 5), SigmaError);
}

TEST(ScalarAction, TableThreeSplittingPrimes) {
    const Fixture fx = load_fixture(std::string(FROBINT_DATA_DIR) + "/table3_N133.tsv");
    const RQField K = fx.field();
    const RQIdeal two = K.ideal({2, 0});
    for (const auto& row : fx.rows) {
        if (row.p == 839 || row.p == 941 || row.p == 1663 || row.p == 1783 || row.p == 1789) {
            ASSERT_TRUE(row.b.has_value()) << row.p;
            EXPECT_TRUE(splits_completely(K, two, K.ideal(*row.b), row.p)) << row.p;
        }
    }
}
