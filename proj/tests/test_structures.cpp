#include <gtest/gtest.h>

#include "coalg/coalg.hpp"
#include "fixtures.hpp"

using namespace coalg;

namespace {

using Q = Rationals;

Matrix<Q> one() { return Matrix<Q>::from_ints(Q{}, 1, 1, {1}); }

}  // namespace

TEST(Comonoid, FixturesPass) {
    EXPECT_TRUE(check_comonoid(fixtures::cx()).ok());
    EXPECT_TRUE(check_comonoid(fixtures::k2()).ok());
    EXPECT_TRUE(check_comonoid(fixtures::trivial_b()).ok());
}

TEST(Comonoid, CxChainMapIdentityByHand) {
    // d(x (x) x) = a (x) x + x (x) a = delta(a) = delta(dx)
    auto c = fixtures::cx();
    auto xx = tensor_complexes(c.carrier, c.carrier);
    auto lhs = compose(xx.differential(), c.delta);
    EXPECT_EQ(lhs.block(0), Matrix<Q>::from_ints(Q{}, 2, 1, {1, 1}));
    EXPECT_EQ(compose(c.delta, c.carrier.differential()).block(0), lhs.block(0));
}

TEST(Comonoid, CoassociativityFailureHasWitness) {
    // delta x = x (x) y, delta y = 0: (delta (x) 1) delta x = x (x) y (x) y, (1 (x) delta) delta x = 0
    Q f;
    GradedModule<Q> m(f, Support{{0, {"x", "y"}}});
    auto mm = tensor_modules(m, m);
    Matrix<Q> blk(f, 4, 2);
    blk(1, 0) = f.one();
    Comonoid<Q> c(ChainComplex<Q>(m), GradedMap<Q>(m, mm, 0, {{0, blk}}));
    auto r = check_comonoid(c);
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(r.find("chain-map")->pass);
    EXPECT_EQ(*r.first_failure(), (Witness{0, "x", "coassociativity"}));
}

TEST(Comonoid, RejectsWrongTarget) {
    Q f;
    GradedModule<Q> m(f, Support{{0, {"x"}}});
    EXPECT_THROW(Comonoid<Q>(ChainComplex<Q>(m), GradedMap<Q>::identity(m)), ModuleMismatch);
}

TEST(Comonoid, DividedPowersAndTransportStayValid) {
    Q q;
    PrimeField f7(7);
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Rng rng(seed);
        EXPECT_TRUE(check_comonoid(gen::random_comonoid(q, rng)).ok()) << seed;
        EXPECT_TRUE(check_comonoid(gen::random_comonoid(f7, rng)).ok()) << seed;
    }
    auto cx = fixtures::cx();
    Rng rng(5);
    EXPECT_TRUE(check_comonoid(transport(cx, gen::random_automorphism(rng, cx.carrier.module()))).ok());
}

TEST(Comonoid, GeneratedCarriersSitBelowMinusOne) {
    Q q;
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Rng rng(seed);
        auto c = gen::random_comonoid(q, rng);
        EXPECT_LE(*c.carrier.module().max_degree(), -2);
    }
}

TEST(Comodule, FixtureAndCofreePass) {
    EXPECT_TRUE(check_comodule(fixtures::m1()).ok());
    Q q;
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        Rng rng(seed);
        auto b = gen::random_comonoid(q, rng, gen::ComonoidShape::compact());
        auto x = gen::random_complex(q, rng, -2, 2, 2);
        auto r = check_comodule(cofree_comodule(x, b));
        EXPECT_TRUE(r.ok()) << seed;
        EXPECT_TRUE(check_comodule(gen::random_comodule(b, rng, -2, 2, 1)).ok()) << seed;
    }
}

TEST(Comodule, BrokenCoactionIsCaught) {
    Q f;
    auto b = fixtures::trivial_b();
    GradedModule<Q> m(f, Support{{1, {"m1"}}, {0, {"m0"}}});
    ChainComplex<Q> x(m, GradedMap<Q>(m, m, -1, {{1, one()}}));
    // rho(m0) = m1 (x) b, rho(m1) = 0, but d m1 = m0 forces rho(m0) = d(rho m1) = 0
    Comodule<Q> bad(b, x, GradedMap<Q>(m, tensor_modules(m, b.carrier.module()), 0, {{0, one()}}));
    auto r = check_comodule(bad);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.first_failure()->identity, "chain-map");
}

TEST(Monoid, FixturesPass) {
    EXPECT_TRUE(check_monoid(fixtures::a1()).ok());
    EXPECT_TRUE(check_right_module(fixtures::ma()).ok());
    EXPECT_TRUE(check_monoid(Monoid<Q>::zero(Q{})).ok());
    Q q;
    for (int k = 1; k <= 3; ++k)
        for (int len = 0; len <= k; ++len) {
            auto a = gen::truncated_polynomial(q, k, 1, q.from_int(3));
            EXPECT_TRUE(check_right_module(gen::truncated_free_module(a, len, 1, -1, q.from_int(3))).ok());
        }
}

TEST(Monoid, NonAssociativeIsCaught) {
    // a1 a1 = a2, a1 a2 = a3 but a2 a1 = 0
    Q f;
    GradedModule<Q> a(f, Support{{1, {"a1"}}, {2, {"a2"}}, {3, {"a3"}}});
    auto aa = tensor_modules(a, a);
    // degree 3 of A (x) A: a1 (x) a2, a2 (x) a1
    GradedMap<Q> mu(aa, a, 0, {{2, one()}, {3, Matrix<Q>::from_ints(f, 1, 2, {1, 0})}});
    auto r = check_monoid(Monoid<Q>(ChainComplex<Q>(a), mu));
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.first_failure()->identity, "associativity");
    EXPECT_EQ(r.first_failure()->degree, 3);
}

TEST(RelativeTensor, CrFixtureKillsDegreeZero) {
    auto m = fixtures::ma();
    auto b = fixtures::crb();
    auto plain = tensor_modules(m.carrier.module(), b.carrier.module());
    auto rt = relative_tensor(m, b.as_left());
    EXPECT_EQ(plain.dim(0), 1u);
    EXPECT_EQ(rt.complex.module().dim(0), 0u);
    EXPECT_EQ(rt.complex.module().dim(-1), 1u);
    EXPECT_EQ(rt.complex.module().labels(-1), (std::vector<std::string>{"[m⊗b]"}));
}

TEST(RelativeTensor, OverTheZeroMonoidIsThePlainTensor) {
    Q q;
    auto z = Monoid<Q>::zero(q);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng rng(seed);
        auto x = gen::random_complex(q, rng, -2, 2, 2, "x");
        auto y = gen::random_complex(q, rng, -2, 2, 2, "y");
        auto zm = z.carrier.module();
        RightModule<Q> mx(z, x, GradedMap<Q>::zero(tensor_modules(x.module(), zm), x.module(), 0));
        LeftModule<Q> my(z, y, GradedMap<Q>::zero(tensor_modules(zm, y.module()), y.module(), 0));
        auto rt = relative_tensor(mx, my);
        auto plain = tensor_complexes(x, y);
        EXPECT_EQ(rt.complex.module().total_dim(), plain.module().total_dim());
        for (auto& [k, labels] : plain.module().support()) EXPECT_EQ(rt.complex.module().dim(k), labels.size());
        for (auto& [k, labels] : plain.module().support())
            EXPECT_EQ(rt.projection.block(k), Matrix<Q>::identity(q, labels.size()));
        EXPECT_EQ(compose(rt.projection, rt.section), GradedMap<Q>::identity(rt.complex.module()));
    }
}

TEST(RelativeTensor, DifferentMonoidsAreRejected) {
    auto b = fixtures::trivial_b().carrier;
    LeftModule<Q> over_zero(Monoid<Q>::zero(Q{}), b,
                            GradedMap<Q>::zero(tensor_modules(GradedModule<Q>(Q{}), b.module()), b.module(), 0));
    EXPECT_THROW(relative_tensor(fixtures::ma(), over_zero), ModuleMismatch);
}

TEST(Coring, FixturesPass) {
    EXPECT_TRUE(check_coring(fixtures::crb()).ok());
    auto r = check_coring_comodule(fixtures::crm());
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.find("A-linearity")->pass);
    // the coaction class of m' (x) b is zero in M (x)_A B
    EXPECT_TRUE(fixtures::crm().coaction.is_zero());
}

TEST(Coring, GeneratedInstancesPass) {
    Q q;
    PrimeField f7(7);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng rng(seed);
        auto m = gen::random_coring_comodule(q, rng);
        EXPECT_TRUE(check_coring_comodule(m).ok()) << seed;
        for (auto& [d, l] : m.coring.algebra.carrier.module().support()) EXPECT_GT(d, 0);
        for (auto& [d, l] : m.coring.carrier.module().support()) EXPECT_LT(d, 0);
        EXPECT_TRUE(check_coring_comodule(gen::random_coring_comodule(f7, rng)).ok()) << seed;
    }
}

TEST(Coring, NonLinearCoactionIsCaught) {
    // A_0 = <e> idempotent, B_-1 = <b> with b e = b and zero left action,
    // M = <u> in degree 0 and <m> in degree 1 with zero action.  Then
    // rho(u) = [m (x) b] breaks A-linearity: rho(u e) = 0, rho(u) e = [m (x) b].
    Q f;
    GradedModule<Q> am(f, Support{{0, {"e"}}});
    Monoid<Q> a(ChainComplex<Q>(am), GradedMap<Q>(tensor_modules(am, am), am, 0, {{0, one()}}));
    auto bc = fixtures::trivial_b().carrier;
    const auto& bm = bc.module();
    GradedMap<Q> left = GradedMap<Q>::zero(tensor_modules(am, bm), bm, 0);
    GradedMap<Q> right(tensor_modules(bm, am), bm, 0, {{-1, one()}});
    auto bb = relative_tensor(RightModule<Q>(a, bc, right), LeftModule<Q>(a, bc, left));
    Coring<Q> b(a, bc, left, right, GradedMap<Q>::zero(bm, bb.complex.module(), 0));
    ASSERT_TRUE(check_coring(b).ok());

    GradedModule<Q> mm(f, Support{{0, {"u"}}, {1, {"m"}}});
    RightModule<Q> m(a, ChainComplex<Q>(mm), GradedMap<Q>::zero(tensor_modules(mm, am), mm, 0));
    auto rt = relative_tensor(m, b.as_left());
    ASSERT_EQ(rt.complex.module().dim(0), 1u);
    CoringComodule<Q> cm(b, m, GradedMap<Q>(mm, rt.complex.module(), 0, {{0, one()}}));
    auto r = check_coring_comodule(cm);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(*r.first_failure(), (Witness{0, "u⊗e", "A-linearity"}));
}
