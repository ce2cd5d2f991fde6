#include <gtest/gtest.h>

#include <random>

#include "coalg/matrix.hpp"

using namespace coalg;

namespace {

const Rationals QQ;
using M = Matrix<Rationals>;

M random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<long> v(-2, 2);
    std::bernoulli_distribution sparse(0.4);
    M m(QQ, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (!sparse(rng)) m(i, j) = QQ.from_int(v(rng));
    return m;
}

}  // namespace

TEST(Field, RationalCanonicalForm) {
    EXPECT_EQ(QQ.parse("2/4"), QQ.parse("1/2"));
    EXPECT_EQ(QQ.format(QQ.parse("-6/3")), "-2");
    EXPECT_EQ(QQ.format(QQ.parse("+3/6")), "1/2");
}

TEST(Field, RationalRejectsBadLiterals) {
    EXPECT_THROW(QQ.parse("1/0"), DomainError);
    EXPECT_THROW(QQ.parse("abc"), DomainError);
    EXPECT_THROW(QQ.parse(""), DomainError);
    EXPECT_THROW(QQ.parse("1/-2"), DomainError);
}

TEST(Field, PrimeFieldArithmetic) {
    PrimeField f7(7);
    EXPECT_EQ(f7.from_int(-1), 6u);
    EXPECT_EQ(f7.mul(f7.inv(3), 3), 1u);
    for (std::uint32_t a = 1; a < 7; ++a) EXPECT_EQ(f7.mul(a, f7.inv(a)), 1u);
    EXPECT_EQ(f7.parse("-8"), 6u);
    EXPECT_THROW(PrimeField(8), DomainError);
    EXPECT_THROW(f7.inv(0), DomainError);
}

TEST(Rref, EmptyMatrix) {
    auto r = rref(M(QQ, 0, 0));
    EXPECT_EQ(r.reduced.rows(), 0u);
    EXPECT_EQ(r.reduced.cols(), 0u);
    EXPECT_TRUE(r.pivots.empty());
}

TEST(Rref, Identity) {
    auto r = rref(M::identity(QQ, 2));
    EXPECT_EQ(r.reduced, M::identity(QQ, 2));
    EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
}

TEST(Rref, RankOneExample) {
    auto r = rref(M::from_ints(QQ, 2, 2, {2, 4, 1, 2}));
    EXPECT_EQ(r.reduced, M::from_ints(QQ, 2, 2, {1, 2, 0, 0}));
    EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
}

TEST(KernelBasis, InjectiveMap) {
    auto k = kernel_basis(M::identity(QQ, 3));
    EXPECT_EQ(k.rows(), 3u);
    EXPECT_EQ(k.cols(), 0u);
}

TEST(KernelBasis, ZeroMap) { EXPECT_EQ(kernel_basis(M(QQ, 2, 3)), M::identity(QQ, 3)); }

TEST(KernelBasis, OneByTwo) {
    auto m = M::from_ints(QQ, 1, 2, {1, 2});
    auto k = kernel_basis(m);
    ASSERT_EQ(k.cols(), 1u);
    EXPECT_TRUE((m * k).is_zero());
    EXPECT_EQ(k, M::from_ints(QQ, 2, 1, {-2, 1}));
}

TEST(ImageBasis, Examples) {
    auto z = image_basis(M(QQ, 2, 2));
    EXPECT_EQ(z.basis.cols(), 0u);
    EXPECT_TRUE(z.pivots.empty());

    auto id = image_basis(M::identity(QQ, 2));
    EXPECT_EQ(id.basis, M::identity(QQ, 2));

    auto r1 = image_basis(M::from_ints(QQ, 2, 2, {2, 4, 1, 2}));
    EXPECT_EQ(r1.basis, M::from_ints(QQ, 2, 1, {2, 1}));
    EXPECT_EQ(r1.pivots, (std::vector<std::size_t>{0}));
}

TEST(QuotientCoordinates, Examples) {
    auto e1 = M::from_ints(QQ, 2, 1, {1, 0});
    auto v = quotient_coordinates(e1, {QQ.one(), QQ.zero()});
    ASSERT_EQ(v.size(), 1u);
    EXPECT_TRUE(QQ.is_zero(v[0]));

    auto trivial = quotient_coordinates(M(QQ, 2, 0), {QQ.zero(), QQ.one()});
    EXPECT_EQ(trivial, (M::Vector{QQ.zero(), QQ.one()}));

    auto diag = M::from_ints(QQ, 2, 1, {1, 1});
    auto c = quotient_coordinates(diag, {QQ.one(), QQ.zero()});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_FALSE(QQ.is_zero(c[0]));
    // re-embed through the complement and reduce again: same class
    auto data = quotient_data(diag);
    M::Vector lifted(2, QQ.zero());
    lifted[data.complement[0]] = c[0];
    EXPECT_EQ(quotient_coordinates(diag, lifted), c);
    // and the difference lies in the subspace
    M::Vector diff{QQ.sub(QQ.one(), lifted[0]), QQ.sub(QQ.zero(), lifted[1])};
    EXPECT_TRUE(solve(diag, diff).has_value());
}

TEST(QuotientCoordinates, DimensionMismatch) {
    EXPECT_THROW(quotient_coordinates(M(QQ, 2, 1), {QQ.one()}), DimensionError);
}

TEST(ExactLinearProperties, RandomMatrices) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> dim(0, 6);
    for (int trial = 0; trial < 300; ++trial) {
        auto m = random_matrix(rng, dim(rng), dim(rng));
        auto r = rref(m);
        EXPECT_EQ(rref(r.reduced).reduced, r.reduced);
        auto k = kernel_basis(m);
        EXPECT_EQ(m.cols(), r.pivots.size() + k.cols());
        EXPECT_TRUE((m * k).is_zero());

        // quotient coordinates vanish exactly on the column space
        M::Vector v(m.rows());
        std::uniform_int_distribution<long> e(-2, 2);
        for (auto& x : v) x = QQ.from_int(e(rng));
        bool in_span = solve(m, v).has_value();
        auto q = quotient_coordinates(m, v);
        bool zero = std::all_of(q.begin(), q.end(), [](const auto& x) { return QQ.is_zero(x); });
        EXPECT_EQ(in_span, zero);
    }
}

TEST(ExactLinearProperties, PrimeFieldRankNullity) {
    PrimeField f7(7);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> v(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
        Matrix<PrimeField> m(f7, 1 + trial % 5, 1 + (trial / 5) % 6);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = f7.from_int(v(rng));
        auto k = kernel_basis(m);
        EXPECT_EQ(m.cols(), rank(m) + k.cols());
        EXPECT_TRUE((m * k).is_zero());
    }
}

TEST(Inverse, RoundTrip) {
    auto m = M::from_ints(QQ, 2, 2, {2, 1, 1, 1});
    EXPECT_EQ(m * inverse(m), M::identity(QQ, 2));
    EXPECT_THROW(inverse(M::from_ints(QQ, 2, 2, {1, 2, 2, 4})), DomainError);
}
