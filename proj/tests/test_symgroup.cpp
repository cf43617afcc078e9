#include <gtest/gtest.h>

#include <random>
#include <set>

#include <immdfun/symgroup.hpp>

#include "test_util.hpp"

using namespace immdfun;

namespace {

// Independent oracle: every weakly decreasing tuple found by brute force over
// compositions of n.
std::set<std::vector<int>> brute_partitions(int n) {
    std::set<std::vector<int>> out;
    const int count = 1 << (n - 1);
    for (int mask = 0; mask < count; ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int b = 0; b < n - 1; ++b) {
            if (mask & (1 << b)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        std::sort(parts.rbegin(), parts.rend());
        out.insert(parts);
    }
    return out;
}

double young_trace(const Partition &p, const Permutation &s) { return young_orthogonal(p, s).entries.trace(); }

} // namespace

TEST(Partitions, SmallCases) {
    auto one = partitions_of(1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], Partition({1}));

    auto three = partitions_of(3);
    ASSERT_EQ(three.size(), 3u);
    EXPECT_EQ(three[0], Partition({3}));
    EXPECT_EQ(three[1], Partition({2, 1}));
    EXPECT_EQ(three[2], Partition({1, 1, 1}));

    EXPECT_EQ(partitions_of(4).size(), 5u);
}

TEST(Partitions, MatchesBruteForceAndIsReverseLex) {
    for (int n = 1; n <= 9; ++n) {
        auto ps = partitions_of(n);
        std::set<std::vector<int>> got;
        for (const auto &p : ps)
            got.insert(p.parts());
        EXPECT_EQ(got, brute_partitions(n)) << n;
        EXPECT_EQ(got.size(), ps.size());
        for (std::size_t i = 1; i < ps.size(); ++i)
            EXPECT_GT(ps[i - 1].parts(), ps[i].parts());
    }
}

TEST(Partitions, RejectsBadInput) {
    EXPECT_THROW(partitions_of(0), DomainError);
    EXPECT_THROW(partitions_of(-3), DomainError);
    EXPECT_THROW(Partition({1, 2}), DomainError);
    EXPECT_THROW(Partition({2, 0}), DomainError);
}

TEST(DimSym, KnownValues) {
    EXPECT_EQ(dim_sym(Partition{3}), 1u);
    EXPECT_EQ(dim_sym(Partition{2, 2}), 2u);
    EXPECT_EQ(dim_sym(Partition{2, 1}), 2u);
    EXPECT_EQ(young_orthogonal(Partition{2, 1}, Permutation::identity(3)).entries.trace(), 2.0);
}

TEST(DimSym, SumOfSquaresIsGroupOrder) {
    for (int n = 1; n <= 6; ++n) {
        std::uint64_t s = 0;
        for (const auto &p : partitions_of(n))
            s += dim_sym(p) * dim_sym(p);
        EXPECT_EQ(s, factorial(n));
    }
}

TEST(Character, S3Values) {
    EXPECT_EQ(character({2, 1}, {1, 1, 1}), 2);
    EXPECT_EQ(character({2, 1}, {2, 1}), 0);
    EXPECT_EQ(character({2, 1}, {3}), -1);
    // Oracle: traces of Young's orthogonal form.
    EXPECT_NEAR(young_trace({2, 1}, Permutation({2, 1, 3})), 0.0, 1e-14);
    EXPECT_NEAR(young_trace({2, 1}, Permutation({2, 3, 1})), -1.0, 1e-14);
    EXPECT_THROW(character({2, 1}, {2, 2}), DomainError);
}

TEST(Character, Orthogonality) {
    for (int n = 1; n <= 6; ++n) {
        const auto ps = partitions_of(n);
        for (const auto &p : ps)
            for (const auto &q : ps) {
                long long s = 0;
                for (const auto &cls : ps)
                    s += static_cast<long long>(class_size(cls)) * character(p, cls) * character(q, cls);
                EXPECT_EQ(s, p == q ? static_cast<long long>(factorial(n)) : 0) << p.str() << q.str();
            }
    }
}

TEST(Character, EqualsYoungTraceOnAllOfSn) {
    for (int n = 1; n <= 5; ++n)
        for (const auto &p : partitions_of(n))
            for (const auto &s : all_permutations(n))
                EXPECT_NEAR(young_trace(p, s), static_cast<double>(character(p, s.cycle_type())), 1e-12)
                    << p.str();
}

TEST(ClassSize, MatchesExhaustiveCount) {
    EXPECT_EQ(class_size({1, 1, 1}), 1u);
    EXPECT_EQ(class_size({2, 1}), 3u);
    EXPECT_EQ(class_size({3}), 2u);
    for (int n = 1; n <= 6; ++n) {
        std::map<Partition, std::uint64_t> counts;
        for (const auto &s : all_permutations(n))
            ++counts[s.cycle_type()];
        for (const auto &[cls, c] : counts)
            EXPECT_EQ(class_size(cls), c);
    }
}

TEST(YoungOrthogonal, TrivialAndSign) {
    auto triv = young_orthogonal({4}, Permutation({3, 1, 4, 2})).entries;
    ASSERT_EQ(triv.rows(), 1);
    EXPECT_DOUBLE_EQ(triv(0, 0), 1.0);
    auto sign = young_orthogonal({1, 1}, Permutation({2, 1})).entries;
    EXPECT_DOUBLE_EQ(sign(0, 0), -1.0);
}

TEST(YoungOrthogonal, S3ProductCheck) {
    const Permutation s1 = Permutation::adjacent(3, 1), s2 = Permutation::adjacent(3, 2);
    const auto lhs = young_orthogonal({2, 1}, compose(s1, s2)).entries;
    const auto rhs = (young_orthogonal({2, 1}, s1).entries * young_orthogonal({2, 1}, s2).entries).eval();
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(YoungOrthogonal, HomomorphismAndOrthogonalityOnRandomPairs) {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> pick_n(2, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = pick_n(rng);
        const auto ps = partitions_of(n);
        const auto &p = ps[rng() % ps.size()];
        const auto a = fixtures::random_permutation(n, rng), b = fixtures::random_permutation(n, rng);
        const auto ga = young_orthogonal(p, a).entries, gb = young_orthogonal(p, b).entries;
        const auto gab = young_orthogonal(p, compose(a, b)).entries;
        EXPECT_LT((gab - ga * gb).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((ga.transpose() * ga - Eigen::MatrixXd::Identity(ga.rows(), ga.rows())).cwiseAbs().maxCoeff(),
                  1e-12);
    }
}

TEST(Permutation, ReducedWordRebuildsPermutation) {
    for (const auto &s : all_permutations(5)) {
        auto w = Permutation::identity(5);
        for (int i : s.reduced_word())
            w = compose(w, Permutation::adjacent(5, i));
        EXPECT_EQ(w, s);
        EXPECT_EQ(static_cast<int>(s.reduced_word().size()), s.length());
    }
    EXPECT_THROW(Permutation({1, 1, 2}), DomainError);
}

TEST(StandardTableaux, CountEqualsHookLength) {
    for (int n = 1; n <= 7; ++n)
        for (const auto &p : partitions_of(n))
            EXPECT_EQ(standard_tableaux(p).size(), dim_sym(p));
}
