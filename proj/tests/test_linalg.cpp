#include <gtest/gtest.h>

#include <random>

#include <immdfun/linalg.hpp>

#include "test_util.hpp"

using namespace immdfun;
using fixtures::random_matrix;

TEST(Immanant, Su2ClosedForms) {
    for (double beta : {0.0, 0.3, 1.0, M_PI / 3, 2.5, M_PI}) {
        const auto t = su2_euler(0.7, beta, -1.9).matrix();
        EXPECT_NEAR(std::abs(immanant({1, 1}, t) - 1.0), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(immanant({2}, t) - std::cos(beta)), 0.0, 1e-14);
    }
}

TEST(Immanant, IdentityGivesDimension) {
    for (int n = 1; n <= 6; ++n)
        for (const auto &p : partitions_of(n))
            EXPECT_NEAR(std::abs(immanant(p, ComplexMatrix::Identity(n, n)) - static_cast<double>(dim_sym(p))), 0.0,
                        1e-14);
}

TEST(Immanant, Errors) {
    EXPECT_THROW(immanant({2, 1}, ComplexMatrix::Identity(2, 2)), DomainError);
    EXPECT_THROW(immanant({10}, ComplexMatrix::Identity(10, 10)), ResourceError);
    EXPECT_THROW(immanant({2}, ComplexMatrix::Identity(2, 3)), DomainError);
    EXPECT_NO_THROW(immanant({10}, ComplexMatrix::Identity(10, 10), 10));
}

TEST(Immanant, DeterministicBitForBit) {
    const auto m = random_matrix(7, 5);
    const cplx a = immanant({4, 2, 1}, m), b = immanant({4, 2, 1}, m);
    EXPECT_EQ(a, b);
}

TEST(Immanant, PermanentAndDeterminantFastPaths) {
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 7;
        const auto m = random_matrix(n, 1000 + trial);
        const cplx per = immanant(Partition({n}), m);
        const cplx det = immanant(Partition(std::vector<int>(n, 1)), m);
        const double scale = std::max(1.0, std::abs(per));
        EXPECT_LT(std::abs(per - permanent_ryser(m)) / scale, 1e-10);
        EXPECT_LT(std::abs(det - determinant(m)) / std::max(1.0, std::abs(det)), 1e-10);
    }
}

TEST(Permanent, SmallCases) {
    EXPECT_NEAR(std::abs(permanent_ryser(ComplexMatrix::Ones(2, 2)) - 2.0), 0.0, 1e-15);
    for (int n = 1; n <= 8; ++n)
        EXPECT_NEAR(std::abs(permanent_ryser(ComplexMatrix::Identity(n, n)) - 1.0), 0.0, 1e-15);
    const auto m = random_matrix(5, 77);
    EXPECT_LT(std::abs(permanent_ryser(m) - immanant({5}, m)), 1e-10);
    EXPECT_THROW(permanent_ryser(ComplexMatrix::Zero(2, 3)), DomainError);
}

TEST(Determinant, SmallCases) {
    EXPECT_NEAR(std::abs(determinant(ComplexMatrix::Identity(4, 4)) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(determinant(haar_random_unitary(5, 3).matrix())), 1.0, 1e-10);
    const auto m = random_matrix(5, 78);
    EXPECT_LT(std::abs(determinant(m) - immanant({1, 1, 1, 1, 1}, m)), 1e-10);
    EXPECT_THROW(determinant(ComplexMatrix::Zero(3, 2)), DomainError);
}

TEST(Immanant, ConjugationInvariance) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + trial % 4;
        const auto m = random_matrix(n, 300 + trial);
        const auto s = fixtures::random_permutation(n, rng);
        const auto p = fixtures::permutation_matrix(s);
        const ComplexMatrix conj = p * m * p.transpose();
        for (const auto &part : partitions_of(n))
            EXPECT_LT(std::abs(immanant(part, conj) - immanant(part, m)), 1e-11);
    }
}

TEST(Immanant, MultilinearInEachRow) {
    const int n = 4;
    const auto a = random_matrix(n, 11), b = random_matrix(n, 12);
    const cplx alpha(0.3, -1.2), beta(-0.7, 0.4);
    for (int row = 0; row < n; ++row) {
        ComplexMatrix ma = a, mb = a, mix = a;
        mb.row(row) = b.row(row);
        mix.row(row) = alpha * a.row(row) + beta * b.row(row);
        for (const auto &p : partitions_of(n))
            EXPECT_LT(std::abs(immanant(p, mix) - (alpha * immanant(p, ma) + beta * immanant(p, mb))), 1e-12);
    }
}

TEST(Submatrix, Layouts) {
    ComplexMatrix t(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            t(i, j) = cplx(10 * (i + 1) + (j + 1), 0);
    const auto s = submatrix(t, SubmatrixSelector({2, 3, 4}, {1, 3, 4}));
    ComplexMatrix expect(3, 3);
    expect << 21, 23, 24, 31, 33, 34, 41, 43, 44;
    EXPECT_EQ(s, expect);
    EXPECT_EQ(submatrix(t, SubmatrixSelector::full(4)), t);

    ComplexMatrix t5(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            t5(i, j) = cplx(10 * (i + 1) + (j + 1), 0);
    const auto p = submatrix(t5, SubmatrixSelector::principal({1, 2, 4}));
    EXPECT_EQ(p(2, 2), cplx(44, 0));
    EXPECT_EQ(p(0, 2), cplx(14, 0));
}

TEST(Submatrix, SelectorValidation) {
    EXPECT_THROW(SubmatrixSelector({2, 1}, {1, 2}), DomainError);
    EXPECT_THROW(SubmatrixSelector({1, 2}, {3, 3}), DomainError);
    EXPECT_THROW(SubmatrixSelector({1, 2}, {1}), DomainError);
    EXPECT_NO_THROW(SubmatrixSelector({1, 2}, {3, 1}));
    EXPECT_THROW(submatrix(ComplexMatrix::Identity(3, 3), SubmatrixSelector({1, 4}, {1, 2})), DomainError);
}

TEST(Haar, DeterministicUnitarySpecial) {
    const auto a = haar_random_unitary(3, 42), b = haar_random_unitary(3, 42);
    EXPECT_EQ(a.matrix(), b.matrix());
    for (int m : {2, 3, 4, 5, 6}) {
        const auto u = haar_random_unitary(m, 100 + m).matrix();
        EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(m, m)).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT(std::abs(u.determinant() - 1.0), 1e-12);
    }
    EXPECT_THROW(haar_random_unitary(1, 0), DomainError);
}

TEST(UnitaryElement, NormalizesGlobalPhase) {
    ComplexMatrix d = ComplexMatrix::Identity(3, 3) * std::polar(1.0, 0.4);
    UnitaryElement u(d);
    EXPECT_TRUE(u.was_normalized());
    EXPECT_LT(std::abs(u.matrix().determinant() - 1.0), 1e-12);
    EXPECT_FALSE(UnitaryElement(ComplexMatrix::Identity(3, 3)).was_normalized());
    EXPECT_THROW(UnitaryElement(2.0 * ComplexMatrix::Identity(2, 2)), DomainError);
}
