#include <gtest/gtest.h>

#include "coalg/coalg.hpp"
#include "fixtures.hpp"

using namespace coalg;

namespace {

using Q = Rationals;

const Check& check_named(const PreservationReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    throw std::runtime_error("no check " + name);
}

void expect_green(const PreservationReport& r) {
    EXPECT_TRUE(r.green()) << "n = " << r.n << ", first failure "
                           << (r.witness ? r.witness->identity + " on " + r.witness->basis : std::string("none"));
}

}  // namespace

TEST(InduceComonoid, K2AtMinusThree) {
    auto induced = induce_comonoid(fixtures::k2(), -3);
    const auto& l = induced.structure.carrier.module();
    EXPECT_EQ(l.degrees(), (std::vector<int>{-4}));
    // delta_-3(c) = (q (x) q)(b (x) b) = 0 since q kills b
    EXPECT_TRUE(induced.structure.delta.is_zero());
    expect_green(induced.report);
    EXPECT_TRUE(induced.report.hypotheses.at("n < -1"));
}

TEST(InduceComonoid, CxAtMinusOneIsRed) {
    auto induced = induce_comonoid(fixtures::cx(), -1);
    const auto& r = induced.report;
    EXPECT_FALSE(r.green());
    EXPECT_FALSE(r.hypotheses.at("n < -1"));
    EXPECT_FALSE(r.axioms);
    EXPECT_FALSE(r.square);
    EXPECT_TRUE(r.local);
    EXPECT_TRUE(r.local_equivalence);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(*r.witness, (Witness{0, bar_label("x"), "axioms/chain-map"}));
    // delta_-1(x bar) = 0 by the case split, delta_-1(a) = a (x) x bar + x bar (x) a
    EXPECT_TRUE(induced.structure.delta.block(0).is_zero());
    EXPECT_EQ(induced.structure.delta.block(-1), Matrix<Q>::from_ints(Q{}, 2, 1, {1, 1}));
    // q (x) q (delta x) = x bar (x) x bar, nonzero: the square fails on x
    EXPECT_EQ(check_named(r, "square").witness->basis, "x");
}

TEST(InduceComonoid, CarrierAtOrBelowNIsUnchanged) {
    Q q;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng rng(seed);
        auto c = gen::random_comonoid(q, rng);
        const int top = *c.carrier.module().max_degree();
        auto induced = induce_comonoid(c, top);
        EXPECT_EQ(induced.structure.carrier.module().support(), c.carrier.module().support());
        EXPECT_EQ(induced.structure.delta.blocks(), c.delta.blocks());
        EXPECT_EQ(induced.q.map().blocks(), GradedMap<Q>::identity(c.carrier.module()).blocks());
        expect_green(induced.report);
    }
}

TEST(InduceComonoid, GreenReportsAreSound) {
    Q q;
    PrimeField f7(7);
    auto run = [](const auto& c) {
        for (int n = -5; n <= -2; ++n) {
            auto induced = induce_comonoid(c, n);
            expect_green(induced.report);
            EXPECT_TRUE(check_comonoid(induced.structure).ok());
            EXPECT_TRUE(is_local(induced.structure.carrier, n));
            EXPECT_TRUE(is_local_equivalence(induced.q, n));
            // the square holds entrywise
            auto qq = tensor_maps(induced.q.map(), induced.q.map());
            EXPECT_EQ(compose(induced.structure.delta, induced.q.map()), compose(qq, c.delta));
        }
    };
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng rng(seed);
        run(gen::random_comonoid(q, rng));
        run(gen::random_comonoid(f7, rng));
    }
}

TEST(InduceComodule, M1AtZero) {
    auto induced = induce_comodule(fixtures::m1(), 0);
    EXPECT_EQ(induced.structure.carrier.module().labels(0), (std::vector<std::string>{"m0"}));
    EXPECT_EQ(induced.structure.carrier.module().dim(1), 0u);
    EXPECT_TRUE(induced.structure.coaction.is_zero());
    expect_green(induced.report);
    EXPECT_TRUE(induced.report.hypotheses.at("B_{>=0} = 0"));
}

TEST(InduceComodule, ZeroCoactionIsGreenEverywhere) {
    Q q;
    Rng rng(3);
    auto b = fixtures::trivial_b();
    auto x = gen::random_complex(q, rng, -3, 3, 2);
    Comodule<Q> m(b, x, GradedMap<Q>::zero(x.module(), tensor_modules(x.module(), b.carrier.module()), 0));
    for (int n = -4; n <= 4; ++n) expect_green(induce_comodule(m, n).report);
}

TEST(InduceComodule, CofreeOverK2AtMinusFive) {
    Q q;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(seed);
        auto x = gen::random_complex(q, rng, -8, -2, 1);
        auto m = cofree_comodule(x, fixtures::k2());
        auto induced = induce_comodule(m, -5);
        expect_green(induced.report);
        EXPECT_TRUE(check_comodule(induced.structure).ok());
    }
}

TEST(InduceComodule, GeneratedComodulesStayGreen) {
    Q q;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Rng rng(seed);
        auto b = gen::random_comonoid(q, rng, gen::ComonoidShape::compact());
        auto m = gen::random_comodule(b, rng, -2, 2, 1);
        for (int n = -3; n <= 3; ++n) {
            auto induced = induce_comodule(m, n);
            expect_green(induced.report);
            EXPECT_TRUE(check_comodule(induced.structure).ok());
        }
    }
}

TEST(InduceCoringComodule, CrFixtureAtZero) {
    auto induced = induce_coring_comodule(fixtures::crm(), 0);
    // mu_0(m (x) a1) = q(m') = 0
    EXPECT_TRUE(induced.structure.module.action.is_zero());
    EXPECT_EQ(induced.structure.module.carrier.module().labels(0), (std::vector<std::string>{"m"}));
    expect_green(induced.report);
    EXPECT_TRUE(check_named(induced.report, "square/action").pass);
    EXPECT_TRUE(check_named(induced.report, "axioms/A-linearity").pass);
}

TEST(InduceCoringComodule, DegreeZeroGeneratorBreaksActionSquare) {
    auto m = fixtures::idempotent_counterexample();
    ASSERT_TRUE(check_coring_comodule(m).ok());
    auto r = preservation_report(m, 0);
    EXPECT_FALSE(r.green());
    EXPECT_FALSE(r.hypotheses.at("A_{<=0} = 0"));
    EXPECT_FALSE(r.square);
    // q(m' e) = m' bar but mu_0(m' bar (x) e) = 0 by the case split
    EXPECT_EQ(*check_named(r, "square/action").witness, (Witness{1, "m'⊗e", "square/action"}));
    // two-path evaluation by hand: q mu and mu_0 (q (x) 1) differ on m' (x) e
    auto induced = induce_coring_comodule(m, 0);
    auto id_a = GradedMap<Q>::identity(m.coring.algebra.carrier.module());
    auto via_source = compose(induced.q.map(), m.module.action);
    auto via_target = compose(induced.structure.module.action, tensor_maps(induced.q.map(), id_a));
    EXPECT_EQ(via_source.block(1), Matrix<Q>::from_ints(Q{}, 1, 1, {1}));
    EXPECT_TRUE(via_target.block(1).is_zero());
}

TEST(InduceCoringComodule, GeneratedInstancesStayGreen) {
    Q q;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(seed);
        auto m = gen::random_coring_comodule(q, rng);
        for (int n = -3; n <= 3; ++n) {
            auto induced = induce_coring_comodule(m, n);
            expect_green(induced.report);
            EXPECT_TRUE(check_coring_comodule(induced.structure).ok());
        }
    }
}

TEST(PreservationReport, RejectsInvalidBase) {
    Q f;
    GradedModule<Q> m(f, Support{{0, {"x", "y"}}});
    Matrix<Q> blk(f, 4, 2);
    blk(1, 0) = f.one();
    Comonoid<Q> bad(ChainComplex<Q>(m), GradedMap<Q>(m, tensor_modules(m, m), 0, {{0, blk}}));
    EXPECT_THROW(preservation_report(bad, -3), BaseStructureInvalid);
    EXPECT_NO_THROW(induce_comonoid(bad, -3));
}

TEST(PreservationReport, FixtureVerdicts) {
    expect_green(preservation_report(fixtures::k2(), -3));
    expect_green(preservation_report(fixtures::m1(), 0));
    auto cx = preservation_report(fixtures::cx(), -1);
    EXPECT_FALSE(cx.green());
    EXPECT_EQ(cx.witness->basis, bar_label("x"));
    EXPECT_EQ(cx.witness->degree, 0);
}

TEST(Search, FindsCxLikeComonoidAtMinusOne) {
    SearchConfig cfg;
    cfg.mode = StructureKind::comonoid;
    cfg.n = -1;
    cfg.window_lo = -1;
    cfg.window_hi = 0;
    cfg.max_dim = 2;
    cfg.trials = 1000;
    cfg.seed = 42;
    auto result = search_counterexample(Q{}, cfg);
    ASSERT_TRUE(result.hit);
    EXPECT_LT(result.hit->trial, 1000);
    const auto& c = std::get<Comonoid<Q>>(result.hit->structure);
    EXPECT_TRUE(check_comonoid(c).ok());
    auto again = preservation_report(c, -1);
    EXPECT_FALSE(again.green());
    EXPECT_EQ(again, result.hit->report);

    // deterministic in the seed
    auto second = search_counterexample(Q{}, cfg);
    EXPECT_EQ(second.hit->trial, result.hit->trial);
    EXPECT_EQ(second.hit->report, result.hit->report);
}

TEST(Search, NothingBelowMinusOne) {
    SearchConfig cfg;
    cfg.mode = StructureKind::comonoid;
    cfg.n = -2;
    cfg.window_lo = -6;
    cfg.window_hi = -2;
    cfg.max_dim = 1;
    cfg.trials = 300;
    cfg.seed = 7;
    auto result = search_counterexample(Q{}, cfg);
    EXPECT_FALSE(result.hit);
    EXPECT_EQ(result.trials_run, 300);
    EXPECT_GT(result.valid_candidates, 0);
}

TEST(Search, ComodulesRespectingTheHypothesisStayGreen) {
    for (int n = -1; n <= 1; ++n) {
        SearchConfig cfg;
        cfg.mode = StructureKind::comodule;
        cfg.n = n;
        cfg.window_lo = -1;
        cfg.window_hi = 1;
        cfg.max_dim = 1;
        cfg.trials = 150;
        cfg.seed = 11;
        cfg.policy = HypothesisPolicy::respect;
        auto result = search_counterexample(PrimeField(3), cfg);
        EXPECT_FALSE(result.hit) << "n = " << n;
    }
}

TEST(Search, CoringModeFindsDegreeZeroFailure) {
    SearchConfig cfg;
    cfg.mode = StructureKind::coring_comodule;
    cfg.n = 0;
    cfg.window_lo = -1;
    cfg.window_hi = 1;
    cfg.max_dim = 1;
    cfg.trials = 2000;
    cfg.seed = 1;
    cfg.policy = HypothesisPolicy::violate;
    auto result = search_counterexample(Q{}, cfg);
    ASSERT_TRUE(result.hit);
    const auto& m = std::get<CoringComodule<Q>>(result.hit->structure);
    EXPECT_FALSE(preservation_report(m, 0).green());
    EXPECT_FALSE(result.hit->report.hypotheses_hold());
}

TEST(Search, RejectsBadConfig) {
    SearchConfig cfg;
    cfg.trials = 0;
    EXPECT_THROW(search_counterexample(Q{}, cfg), DomainError);
    cfg.trials = 1;
    cfg.window_lo = 2;
    cfg.window_hi = 1;
    EXPECT_THROW(search_counterexample(Q{}, cfg), DomainError);
}
