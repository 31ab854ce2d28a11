#include <random>

#include <gtest/gtest.h>

#include "algser/expansion.hpp"
#include "algser/flajolet_soria.hpp"
#include "algser/henselization.hpp"
#include "support/instances.hpp"

using namespace algser;
using namespace algser::testing;

namespace {

TruncatedSeries quartic_root(std::size_t t) { return newton_lift(quartic(), rats({1, 1}), t).series; }

ReducedHenselEq random_q(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> deg(1, 3);
    std::uniform_int_distribution<int> coin(0, 2);
    while (true) {
        const std::size_t dl = deg(rng), dm = deg(rng);
        BivarPoly q;
        for (std::size_t m = 0; m <= dm; ++m)
            for (std::size_t l = 0; l <= dl; ++l) {
                if ((l == 0 && m <= 1) || coin(rng)) continue;
                q.set(l, m, random_rat(rng, 3));
            }
        ReducedHenselEq eq(q);
        if (eq.has_pure_x_term()) return eq;
    }
}

} // namespace

TEST(FsCoefficient, IdentityEquation) {
    const ReducedHenselEq q(BivarPoly{{{1, 0}, Rat(1)}});
    const auto s = fs_expand(q, 6);
    EXPECT_EQ(s.coeff(0), Rat(0));
    EXPECT_EQ(s.coeff(1), Rat(1));
    for (std::size_t n = 2; n <= 6; ++n) EXPECT_EQ(s.coeff(n), Rat(0));
}

TEST(FsCoefficient, Catalan) {
    const ReducedHenselEq q(BivarPoly{{{1, 0}, Rat(1)}, {{0, 2}, Rat(1)}});
    const std::vector<long> want{1, 1, 2, 5, 14, 42, 132, 429};
    const auto s = fs_expand(q, 8);
    for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(s.coeff(n), Rat(want[n - 1])) << n;
    FsOptions restricted;
    restricted.restrict_m_le_n = true;
    EXPECT_THROW(fs_coefficient(q, 3, restricted), input_error);
}

TEST(FsCoefficient, NoSolutionTermGivesZero) {
    const ReducedHenselEq q(BivarPoly{{{1, 1}, Rat(1)}, {{0, 2}, Rat(1)}});
    EXPECT_FALSE(q.has_pure_x_term());
    EXPECT_TRUE(fs_expand(q, 5).is_zero_truncation());
}

TEST(FsCoefficient, Errors) {
    const ReducedHenselEq q(BivarPoly{{{1, 0}, Rat(1)}});
    EXPECT_THROW(fs_coefficient(q, 0), input_error);
    EXPECT_THROW(fs_expand(q, 0), input_error);
    FsOptions tight;
    tight.node_budget = 10;
    const ReducedHenselEq cat(BivarPoly{{{1, 0}, Rat(1)}, {{0, 2}, Rat(1)}, {{1, 2}, Rat(1)}});
    EXPECT_THROW(fs_coefficient(cat, 10, tight), budget_error);
}

TEST(FsCoefficient, CompositionNorms) {
    const ReducedHenselEq q(BivarPoly{{{1, 0}, Rat(1)}, {{0, 2}, Rat(1)}, {{2, 1}, Rat(1)}});
    NodeBudget budget;
    std::size_t count = 0;
    for_each_fs_composition(q, 5, 9, budget, [&](const CompositionVector& k) {
        ++count;
        EXPECT_EQ(k.norm1(), 5u);
        EXPECT_EQ(k.norm2() + 1, k.size());
    });
    EXPECT_GT(count, 0u);
}

TEST(FsCoefficient, DefiningEquation) {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 100; ++t) {
        const auto q = random_q(rng);
        const std::size_t T = 6;
        const auto y = fs_expand(q, T);
        const auto lhs = eval_poly_at_series(q.q(), y, T);
        for (std::size_t n = 0; n <= T; ++n) EXPECT_EQ(lhs.coeff(n), y.coeff(n)) << q.q().str();
    }
}

TEST(FsCoefficient, RestrictionChangesNothingWithoutXFreeTerms) {
    std::mt19937_64 rng(47);
    int tested = 0;
    while (tested < 30) {
        auto q = random_q(rng);
        if (!q.no_x_free_terms()) continue;
        ++tested;
        FsOptions restricted;
        restricted.restrict_m_le_n = true;
        for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(fs_coefficient(q, n, restricted), fs_coefficient(q, n));
    }
}

TEST(FsCoefficient, QuarticTail) {
    const auto h = henselize(quartic(), quartic_root(4), 1);
    const auto s = fs_expand(h.eq, 6);
    const std::vector<Rat> want{Rat(0), Rat(-1), rat_of(-1, 2), Rat(1), Rat(1), Rat(-1)};
    for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(s.coeff(n), want[n - 1]);
    FsOptions restricted;
    restricted.restrict_m_le_n = true;
    EXPECT_EQ(fs_expand(h.eq, 6, restricted).tail(), s.tail());
}

TEST(ClosedForm, QuarticValues) {
    const auto c = rats({1, 1});
    const std::vector<Rat> want{Rat(0), Rat(-1), rat_of(-1, 2), Rat(1), Rat(1), Rat(-1)};
    for (std::size_t p = 1; p <= 6; ++p) EXPECT_EQ(closed_form_coefficient(quartic(), c, 1, 3, Rat(2), p), want[p - 1]);
}

TEST(ClosedForm, SymbolicSpotCheck) {
    // c_4 = -2 a22 c1 c2 / (2 a02 c1) at k = 1, p = 2.
    std::mt19937_64 rng(53);
    for (int t = 0; t < 10; ++t) {
        const Rat c1 = random_nonzero_rat(rng, 5);
        const Rat a02 = random_nonzero_rat(rng, 5);
        const Rat a22 = random_nonzero_rat(rng, 5);
        const BivarPoly p = quartic_family(a02, -a02 * c1 * c1, random_rat(rng, 5), a22);
        const auto root = newton_lift(p, std::vector<Rat>{c1}, 8).series;
        const auto h = henselize(p, root, 1);
        const Rat want = Rat(-2) * a22 * c1 * root.coeff(2) / (Rat(2) * a02 * c1);
        const std::vector<Rat> seed{root.coeff(1), root.coeff(2)};
        EXPECT_EQ(closed_form_coefficient(p, seed, 1, h.i_k, h.omega0, 2), want);
        EXPECT_EQ(root.coeff(4), want);
    }
}

TEST(ClosedForm, TripleAgreement) {
    auto insts = random_instances(12, 59, 20);
    const auto more = separated_branch_instances(4, 61, 20);
    insts.insert(insts.end(), more.begin(), more.end());
    for (const auto& inst : insts)
        for (std::size_t k = inst.k0 + 1; k <= inst.k0 + 2; ++k) {
            const auto h = henselize(inst.p, inst.root, k);
            const auto tail = inst.root.tail();
            const std::vector<Rat> seed(tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(k + 1));
            const auto fs = fs_expand(h.eq, 4);
            for (std::size_t p = 1; p <= 4; ++p) {
                const Rat cf = closed_form_coefficient(inst.p, seed, k, h.i_k, h.omega0, p);
                EXPECT_EQ(cf, inst.root.coeff(k + 1 + p)) << inst.p.str() << " k=" << k << " p=" << p;
                EXPECT_EQ(fs.coeff(p), inst.root.coeff(k + 1 + p));
            }
        }
}

TEST(ClosedForm, TableIndexInvariants) {
    for (const auto& inst : random_instances(6, 67, 12)) {
        const std::size_t k = inst.k0 + 1;
        const auto i_k = order_sequence(inst.p, inst.root, k).i(k);
        const auto table = closed_form_table(inst.p, k, i_k, 4);
        for (std::size_t q = 1; q <= 4; ++q)
            for (const auto& [s, by_t] : table.by_q[q - 1]) {
                EXPECT_EQ(abs_norm(s), q);
                std::size_t s1 = 0, s2 = 0;
                for (std::size_t t = 0; t < s.size(); ++t) {
                    s1 += s[t] * table.support[t].i;
                    s2 += s[t] * table.support[t].j;
                }
                for (const auto& [tv, e] : by_t) {
                    EXPECT_GT(e, 0);
                    EXPECT_EQ(abs_norm(tv) + q, s2 + 1);
                    EXPECT_EQ(weighted_norm(tv) + s1 + (q - 1) * (k + 1), 4 + q * i_k);
                    EXPECT_EQ(e_coefficient(inst.p, k, i_k, s, tv), e);
                }
            }
    }
}

TEST(ClosedForm, SingleFactorIsMultinomial) {
    // q = 1 entries come from one atom with m = 0: j!/L!.
    const auto table = closed_form_table(quartic(), 1, 3, 3);
    const auto support = table.support;
    for (const auto& [s, by_t] : table.by_q[0]) {
        std::size_t t = 0;
        while (s[t] == 0) ++t;
        const unsigned j = static_cast<unsigned>(support[t].j);
        for (const auto& [tv, e] : by_t) {
            const unsigned m = j - static_cast<unsigned>(abs_norm(tv));
            std::vector<unsigned> parts(tv);
            parts.push_back(m);
            EXPECT_EQ(e, multinomial(j, parts));
            EXPECT_EQ(m, 0u);
        }
    }
}

TEST(ClosedForm, DenominatorDividesOmegaPower) {
    int tested = 0;
    for (const auto& inst : random_instances(40, 71, 14)) {
        const std::size_t k = inst.k0 + 1;
        bool integral = true;
        for (std::size_t n = 1; n <= k + 1; ++n) integral = integral && inst.root.coeff(n).den() == 1;
        if (!integral) continue;
        ++tested;
        const auto h = henselize(inst.p, inst.root, k);
        for (std::size_t p = 1; p <= 6; ++p)
            EXPECT_EQ((pow(h.omega0, p) * inst.root.coeff(k + 1 + p)).den(), 1) << inst.p.str() << " p=" << p;
    }
    EXPECT_GT(tested, 5);
}

TEST(ClosedForm, BudgetAndErrors) {
    EXPECT_THROW(closed_form_table(quartic(), 1, 3, 6, 50), budget_error);
    EXPECT_THROW(closed_form_table(quartic(), 1, 3, 0), input_error);
    EXPECT_THROW(closed_form_coefficient(quartic(), rats({1}), 1, 3, Rat(2), 1), precision_error);
    EXPECT_THROW(closed_form_coefficient(quartic(), rats({1, 1}), 1, 3, Rat(0), 1), not_simple_root_error);
}

TEST(Expand, AllMethodsOnQuartic) {
    const auto r = expand_root(quartic(), rats({1}), 6, ExpandMethod::all);
    EXPECT_TRUE(r.seed_extended);
    EXPECT_EQ(r.k, 1u);
    EXPECT_EQ(r.omega0, Rat(2));
    EXPECT_TRUE(r.agree());
    const std::vector<Rat> want{Rat(0), Rat(-1), rat_of(-1, 2), Rat(1), Rat(1), Rat(-1)};
    EXPECT_EQ(r.coefficients(), want);
}

TEST(Expand, SeedMustSeparate) {
    const BivarPoly a{{{0, 1}, Rat(1)}, {{1, 0}, Rat(-1)}, {{2, 0}, Rat(-1)}};
    const BivarPoly b{{{0, 1}, Rat(1)}, {{1, 0}, Rat(-1)}, {{3, 0}, Rat(-1)}, {{4, 1}, Rat(1)}};
    EXPECT_THROW(expand_root(a * b, rats({1}), 3, ExpandMethod::all), precision_error);
    EXPECT_THROW(expand_root(quartic(), rats({1, 7}), 3, ExpandMethod::all), not_simple_root_error);
    EXPECT_THROW(parse_expand_method("fast"), input_error);
}

TEST(Expand, PolynomialRootGivesZeros) {
    const BivarPoly p{{{0, 1}, Rat(1)}, {{1, 0}, Rat(-1)}};
    const auto r = expand_root(p, rats({1}), 4, ExpandMethod::all);
    EXPECT_TRUE(r.polynomial_root);
    EXPECT_EQ(r.coefficients(), std::vector<Rat>(4));
}
