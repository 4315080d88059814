#include <gtest/gtest.h>

#include "frobint/rq_field.hpp"

#include <map>
#include <random>
#include <set>

using namespace frobint;

namespace {

const RQField K5(1, -1);   // x^2 + x - 1
const RQField K5b(3, 1);   // x^2 + 3x + 1

// Norm through the two real embeddings; independent of the norm form.
std::int64_t norm_by_embedding(const RQField& K, RQInt x) {
    auto e = K.embed(x);
    return static_cast<std::int64_t>(std::llround(e[0] * e[1]));
}

RQField field_for(std::int64_t d) {
    return d % 4 == 1 ? RQField(1, (1 - d) / 4) : RQField(0, -d);
}

}  // namespace

TEST(RQField, NormExamples) {
    EXPECT_EQ(K5.norm({1, 2}), norm_by_embedding(K5, {1, 2}));
    EXPECT_EQ(K5.norm({1, 2}), -5);
    // norm form x^2 - xy - y^2 at (2,3)
    EXPECT_EQ(K5.norm({2, 3}), 2 * 2 - 2 * 3 - 3 * 3);
    EXPECT_EQ(K5.norm({1, 0}), 1);
    EXPECT_EQ(K5.trace({1, 0}), 2);
}

TEST(RQField, NormMultiplicativeTraceAdditive) {
    for (const RQField* K : {&K5, &K5b}) {
        std::vector<RQInt> xs;
        for (std::int64_t a = -10; a <= 10; ++a)
            for (std::int64_t b = -10; b <= 10; ++b) xs.push_back({a, b});
        for (const auto& x : xs) {
            ASSERT_EQ(K->norm(x), norm_by_embedding(*K, x));
            for (std::size_t j = 0; j < xs.size(); j += 7) {
                const auto& y = xs[j];
                ASSERT_EQ(K->norm(K->mul(x, y)), K->norm(x) * K->norm(y));
                ASSERT_EQ(K->trace(K->add(x, y)), K->trace(x) + K->trace(y));
            }
        }
    }
}

TEST(RQField, RejectsNonMaximalOrNonReal) {
    EXPECT_THROW(RQField(0, -5), FieldError);   // Z[sqrt5] has index 2
    EXPECT_THROW(RQField(0, 1), FieldError);    // imaginary
    EXPECT_THROW(RQField(0, -4), FieldError);   // square discriminant
}

TEST(PrimeAbove, Examples) {
    // x^2+x-1 has no root mod 2
    for (int x = 0; x < 2; ++x) EXPECT_NE((x * x + x + 1) % 2, 0);
    auto p2 = K5.prime_above(2);
    ASSERT_EQ(p2.size(), 1u);
    EXPECT_EQ(p2[0].second.type, SplitType::Inert);
    EXPECT_EQ(p2[0].first, K5.ideal({2, 0}));
    EXPECT_EQ(p2[0].first.norm(), 4);

    auto p5 = K5.prime_above(5);
    ASSERT_EQ(p5.size(), 1u);
    EXPECT_EQ(p5[0].second.type, SplitType::Ramified);
    EXPECT_EQ(K5.mul(RQInt{1, 2}, RQInt{1, 2}), (RQInt{5, 0}));
    EXPECT_EQ(p5[0].first, K5.ideal({1, 2}));

    auto p11 = K5.prime_above(11);
    ASSERT_EQ(p11.size(), 2u);
    EXPECT_EQ(p11[0].second.str(), "l11_1");
    EXPECT_EQ(p11[1].second.str(), "l11_2");
    // the printed generator 2+3a of l11_1
    EXPECT_TRUE(K5.contains(p11[0].first, {2, 3}));
    EXPECT_FALSE(K5.contains(p11[1].first, {2, 3}));
}

TEST(PrimeAbove, ProductIsEll) {
    for (const RQField* K : {&K5, &K5b}) {
        for (std::int64_t ell : {2, 3, 5, 7, 11, 13, 19, 29, 31, 41, 59, 61, 97}) {
            RQIdeal prod = K->unit_ideal();
            auto ps = K->prime_above(ell);
            for (const auto& [P, lab] : ps) {
                EXPECT_EQ(P.norm(), ideal_norm_from_label(lab));
                prod = K->mul(prod, lab.type == SplitType::Ramified ? K->mul(P, P) : P);
            }
            EXPECT_EQ(prod, K->ideal({ell, 0})) << ell;
        }
    }
}

TEST(FindGenerator, Examples) {
    EXPECT_EQ(K5.find_generator(K5.unit_ideal()), (RQInt{1, 0}));
    const RQIdeal l11 = K5.prime_by_label({11, SplitType::Split, 1});
    const RQInt g = K5.find_generator(l11);
    EXPECT_EQ(K5.ideal(g), l11);
    EXPECT_EQ(K5.ideal(g), K5.ideal({2, 3}));
    EXPECT_EQ(g, (RQInt{3, -1}));  // canonical associate of 2+3a
    const RQIdeal I = K5.mul(K5.ideal({3, 0}), K5.prime_by_label({5, SplitType::Ramified, 1}));
    const RQInt h = K5.find_generator(I);
    EXPECT_EQ(std::llabs(K5.norm(h)), 45);
    EXPECT_EQ(K5.ideal(h), K5.ideal({3, 6}));
}

TEST(FindGenerator, ReconstructsSampledIdeals) {
    std::mt19937_64 rng(23);
    for (const RQField* K : {&K5, &K5b}) {
        std::vector<RQIdeal> primes;
        for (std::int64_t ell : {2, 3, 5, 11, 19, 29, 31})
            for (const auto& pr : K->prime_above(ell)) primes.push_back(pr.first);
        for (int it = 0; it < 200; ++it) {
            RQIdeal I = K->unit_ideal();
            while (I.norm() < 1000 && rng() % 4) I = K->mul(I, primes[rng() % primes.size()]);
            RQInt g = K->find_generator(I);
            EXPECT_EQ(K->ideal(g), I);
            EXPECT_EQ(std::llabs(K->norm(g)), I.norm());
        }
    }
}

TEST(NormalizeAssociate, MinimalOverWideWindow) {
    const RQInt e = K5.fundamental_unit(), ei = K5.unit_inverse();
    for (RQInt g : {RQInt{2, 3}, RQInt{3, 6}, RQInt{7, -2}, RQInt{-5, 11}}) {
        RQInt c = K5.normalize_associate(g);
        EXPECT_EQ(K5.ideal(c), K5.ideal(g));
        RQInt x = g, y = g;
        for (int k = 0; k < 12; ++k) {
            for (RQInt z : {x, y, K5.neg(x), K5.neg(y)}) {
                EXPECT_LE(std::llabs(c.c1), std::llabs(z.c1));
                if (std::llabs(c.c1) == std::llabs(z.c1)) {
                    EXPECT_LE(std::llabs(c.c0), std::llabs(z.c0));
                }
            }
            x = K5.mul(x, e);
            y = K5.mul(y, ei);
        }
    }
}

TEST(FactorIdeal, Examples) {
    EXPECT_TRUE(K5.factor_ideal(K5.unit_ideal()).empty());
    auto f = K5.factor_ideal(K5.ideal({3, 6}));
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0].label.str(), "(3)");
    EXPECT_EQ(f[0].exp, 1);
    EXPECT_EQ(f[1].label.str(), "l5");
    EXPECT_EQ(f[1].exp, 1);
    auto g = K5.factor_ideal(K5.ideal({2, 3}));
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g[0].label.str(), "l11_1");
    EXPECT_EQ(fac_to_string(K5.factor_ideal(K5.ideal({4, 0}))), "(2)^2");
}

TEST(FactorIdeal, FactorOfProductIsIdentity) {
    std::mt19937_64 rng(29);
    for (const RQField* K : {&K5, &K5b}) {
        std::vector<std::pair<RQIdeal, PrimeLabel>> primes;
        for (std::int64_t ell : {2, 3, 5, 7, 11, 19, 29, 31, 41})
            for (const auto& pr : K->prime_above(ell)) primes.push_back(pr);
        for (int it = 0; it < 300; ++it) {
            std::map<PrimeLabel, int> want;
            RQIdeal I = K->unit_ideal();
            for (;;) {
                const auto& pr = primes[rng() % primes.size()];
                if (I.norm() * pr.first.norm() > 10000) break;
                I = K->mul(I, pr.first);
                ++want[pr.second];
            }
            std::map<PrimeLabel, int> got;
            for (const auto& f : K->factor_ideal(I)) got[f.label] = f.exp;
            EXPECT_EQ(got, want);
            EXPECT_EQ(K->ideal_of_factors(K->factor_ideal(I)), I);
        }
    }
}

TEST(ResidueSystem, Examples) {
    EXPECT_EQ(K5.residue_system(K5.unit_ideal()), (std::vector<RQInt>{{0, 0}}));
    auto r2 = K5.residue_system(K5.ideal({2, 0}));
    std::set<std::pair<std::int64_t, std::int64_t>> s2;
    for (auto x : r2) s2.insert({x.c0, x.c1});
    EXPECT_EQ(s2, (std::set<std::pair<std::int64_t, std::int64_t>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    auto r5 = K5.residue_system(K5.ideal({1, 2}));
    EXPECT_EQ(r5, (std::vector<RQInt>{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}}));
}

TEST(ResidueSystem, PairwiseIncongruentAndComplete) {
    for (std::int64_t c0 = -8; c0 <= 8; ++c0)
        for (std::int64_t c1 = 0; c1 <= 8; ++c1) {
            RQInt g{c0, c1};
            if (g.is_zero() || std::llabs(K5.norm(g)) > 50) continue;
            const RQIdeal b = K5.ideal(g);
            auto r = K5.residue_system(b);
            ASSERT_EQ(static_cast<std::int64_t>(r.size()), b.norm());
            for (std::size_t i = 0; i < r.size(); ++i)
                for (std::size_t j = i + 1; j < r.size(); ++j) ASSERT_FALSE(K5.contains(b, K5.sub(r[i], r[j])));
        }
}

TEST(ReduceMod, CanonicalWithinClass) {
    const RQIdeal b = K5.ideal({2, 3});
    for (std::int64_t c0 = -20; c0 <= 20; ++c0)
        for (std::int64_t c1 = -20; c1 <= 20; ++c1) {
            RQInt x{c0, c1};
            RQInt r = K5.reduce_mod(x, b);
            ASSERT_TRUE(K5.contains(b, K5.sub(x, r)));
            EXPECT_LE(std::llabs(r.c1), 1);
        }
    // 9+a and 1 are in the same class mod l11_1
    EXPECT_EQ(K5.reduce_mod({9, 1}, b), (RQInt{1, 0}));
}

TEST(SplitOne, CoprimeIdeals) {
    const RQIdeal I = K5.ideal({4, 0}), J = K5.mul(K5.ideal({2, 3}), K5.ideal({3, 0}));
    auto [x, y] = K5.split_one(I, J);
    EXPECT_TRUE(K5.contains(I, x));
    EXPECT_TRUE(K5.contains(J, y));
    EXPECT_EQ(K5.add(x, y), (RQInt{1, 0}));
    EXPECT_THROW(K5.split_one(K5.ideal({2, 0}), K5.ideal({6, 0})), FieldError);
}

TEST(ChangeDisplayBasis, Examples) {
    EXPECT_EQ(change_display_basis({0, 1}, K5, K5b), (RQInt{1, 1}));
    EXPECT_EQ(change_display_basis({1, 0}, K5, K5b), (RQInt{1, 0}));
    // sqrt5 = 1+2a; its image must square to 5 in the target field
    RQInt s = change_display_basis({1, 2}, K5, K5b);
    EXPECT_EQ(K5b.mul(s, s), (RQInt{5, 0}));
    EXPECT_EQ(s, (RQInt{3, 2}));
    for (std::int64_t a = -5; a <= 5; ++a)
        for (std::int64_t b = -5; b <= 5; ++b) {
            RQInt x{a, b};
            EXPECT_EQ(change_display_basis(change_display_basis(x, K5, K5b), K5b, K5), x);
            EXPECT_EQ(K5.norm(x), K5b.norm(change_display_basis(x, K5, K5b)));
        }
    EXPECT_THROW(change_display_basis({1, 1}, K5, RQField(0, -2)), FieldError);
}

TEST(FundamentalUnit, MatchesPellBruteForce) {
    for (std::int64_t d : {2, 3, 5, 6, 7, 11, 13, 14, 17, 19, 21, 22, 23, 29, 31, 33, 37, 38, 41, 43, 46, 47, 53,
                           57, 59, 61, 62, 67, 69, 71, 73, 77, 83, 86, 89, 93, 94, 97}) {
        const RQField K = field_for(d);
        const RQInt e = K.fundamental_unit();
        EXPECT_EQ(std::llabs(K.norm(e)), 1);
        EXPECT_FALSE(e == (RQInt{1, 0}) || e == (RQInt{-1, 0}));
        // smallest y > 0 with x^2 - d y^2 = +-4 (d = 1 mod 4) or +-1
        const std::int64_t m = d % 4 == 1 ? 4 : 1;
        long double eps = 0;
        for (std::int64_t y = 1; eps == 0 && y < 1000000; ++y) {
            const std::int64_t dy2 = d * y * y;
            for (std::int64_t s : {-m, m}) {
                const std::int64_t x2 = dy2 + s;
                if (x2 > 0 && is_square(x2)) {
                    eps = (isqrt(x2) + y * std::sqrt(static_cast<long double>(d))) / (d % 4 == 1 ? 2 : 1);
                    break;
                }
            }
        }
        ASSERT_GT(eps, 0) << d;
        auto em = K.embed(e);
        const long double got = std::max(std::fabs(em[0]), std::fabs(em[1]));
        EXPECT_NEAR(got / eps, 1.0L, 1e-9L) << d;
    }
}

TEST(ClassNumberOne, PrimesBelowMinkowskiArePrincipal) {
    for (std::int64_t d = 2; d < 100; ++d) {
        if (!class_number_one_whitelisted(d)) continue;
        const RQField K = field_for(d);
        const std::int64_t bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(K.disc())) / 2) + 1;
        for (std::int64_t ell = 2; ell <= bound; ++ell) {
            if (!is_prime(static_cast<std::uint64_t>(ell))) continue;
            for (const auto& [P, lab] : K.prime_above(ell)) {
                RQInt g = K.find_generator(P);
                EXPECT_EQ(K.ideal(g), P) << d << " " << lab.str();
            }
        }
    }
    EXPECT_FALSE(class_number_one_whitelisted(10));
    EXPECT_THROW(RQField(0, -10).find_generator(RQField(0, -10).prime_above(3)[0].first), FieldError);
}

TEST(TextFormat, ParseAndFormat) {
    struct Case {
        const char* in;
        RQInt v;
        const char* out;
    };
    for (auto c : std::vector<Case>{{"4+4*a", {4, 4}, "4+4*a"},
                                    {"-16*a", {0, -16}, "-16*a"},
                                    {"2a", {0, 2}, "2*a"},
                                    {"9+a", {9, 1}, "9+a"},
                                    {"-3-5*a", {-3, -5}, "-3-5*a"},
                                    {"a", {0, 1}, "a"},
                                    {"-a", {0, -1}, "-a"},
                                    {"0", {0, 0}, "0"},
                                    {" 7 ", {7, 0}, "7"},
                                    {"-2", {-2, 0}, "-2"}}) {
        EXPECT_EQ(RQField::parse(c.in), c.v) << c.in;
        EXPECT_EQ(RQField::format(c.v), c.out);
        EXPECT_EQ(RQField::parse(RQField::format(c.v)), c.v);
    }
    EXPECT_THROW(RQField::parse("x+1"), FieldError);
    EXPECT_THROW(RQField::parse(""), FieldError);
}

TEST(TextFormat, ParseFactorization) {
    EXPECT_TRUE(K5.parse_factorization("(1)").empty());
    auto f = K5.parse_factorization("l11_1*(2)^2");
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(fac_to_string(f), "(2)^2*l11_1");
    EXPECT_EQ(K5.ideal_of_factors(f), K5.mul(K5.ideal({4, 0}), K5.ideal({2, 3})));
    EXPECT_THROW(K5.parse_factorization("l7"), FieldError);  // 7 is inert
    EXPECT_THROW(K5.parse_factorization("q3"), FieldError);
}
