#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include <immdfun/plethysm.hpp>

using namespace immdfun;

namespace {

// 2J of the su(2) label at level 2.
int level2_twice_j(const GTPattern &p) {
    const auto &row = p[p.size() - 2];
    return row[0] - row[1];
}

const FittedCoefficient &coefficient(const DecompositionResult &res, const std::vector<int> &row, int left_2j,
                                     int right_2j) {
    for (const auto &f : res.coefficients)
        if (f.candidate.irrep.row() == row && level2_twice_j(f.candidate.left) == left_2j &&
            level2_twice_j(f.candidate.right) == right_2j)
            return f;
    throw std::runtime_error("coefficient not found");
}

} // namespace

TEST(Recognize, RationalsAndSurds) {
    EXPECT_EQ(recognize(64.0 / 385)->str(), "64/385");
    EXPECT_EQ(recognize(-2.0 / 5)->str(), "-2/5");
    EXPECT_EQ(recognize(1.0)->str(), "1");
    EXPECT_EQ(recognize(0.0)->str(), "0");
    EXPECT_EQ(recognize(6.0 / 49 * std::sqrt(10.0 / 11))->str(), "6/539*sqrt(110)");
    EXPECT_EQ(recognize(8.0 / (63 * std::sqrt(5.0)))->str(), "8/315*sqrt(5)");
    EXPECT_EQ(recognize(std::sqrt(2.0))->str(), "sqrt(2)");
    const auto f = *recognize(16.0 / 441);
    EXPECT_NEAR(f.value(), 16.0 / 441, 1e-15);
}

TEST(Weights, ProductOfAllBaseStates) {
    EXPECT_EQ(plethysm_weight(SUIrrepLabel({2, 0, 0})).occupation, (std::vector<int>{4, 4, 4}));
    EXPECT_EQ(plethysm_weight(SUIrrepLabel::su2(3)).occupation, (std::vector<int>{6, 6}));
    EXPECT_EQ(plethysm_weight(SUIrrepLabel({1, 0, 0})).occupation, (std::vector<int>{1, 1, 1}));
}

TEST(Candidates, TorusSelection) {
    const WeightVector w{{4, 4, 4}};
    EXPECT_EQ(torus_candidates(SUIrrepLabel({12, 0, 0}), w).size(), 1u);
    EXPECT_EQ(torus_candidates(SUIrrepLabel({10, 2, 0}), w).size(), 9u);
    EXPECT_EQ(torus_candidates(SUIrrepLabel({8, 4, 0}), w).size(), 25u);
    EXPECT_EQ(torus_candidates(SUIrrepLabel({6, 0, 0}), w).size(), 1u);
    EXPECT_EQ(torus_candidates(SUIrrepLabel({0, 0, 0}), w).size(), 1u);
    EXPECT_TRUE(torus_candidates(SUIrrepLabel({7, 0, 0}), w).empty());
    EXPECT_EQ(su3_sym2_permanent_problem().candidates.size(), 38u);
    EXPECT_THROW(make_problem(SUIrrepLabel({2, 0, 0}), Partition{5}, {}), DomainError);
}

TEST(Fit, Su2SpinThreeHalves) {
    const auto prob = su2_problem(3, {2, 2});
    const auto res = fit_decomposition(prob, default_samples(prob), 11);
    EXPECT_LT(res.residual, 1e-10);
    const std::map<int, double> expected{{8, 26.0 / 35}, {4, 6.0 / 7}, {0, 2.0 / 5}};
    for (const auto &f : res.coefficients) {
        const int twice_j = f.candidate.irrep.row()[0];
        const auto it = expected.find(twice_j);
        const double want = it == expected.end() ? 0.0 : it->second;
        EXPECT_LT(std::abs(f.value - want), it == expected.end() ? 1e-9 : 1e-8) << "2J = " << twice_j;
    }
    EXPECT_TRUE(diagonal_sum_check(res, {2, 2}).pass);
}

TEST(Fit, Su2Support) {
    const auto three_halves = candidate_irreps_su2(3, {2, 2});
    ASSERT_EQ(three_halves.size(), 3u);
    EXPECT_EQ(three_halves[0].first, 8);
    EXPECT_EQ(three_halves[1].first, 4);
    EXPECT_EQ(three_halves[2].first, 0);
    const auto sym = candidate_irreps_su2(1, {2});
    ASSERT_EQ(sym.size(), 1u);
    EXPECT_EQ(sym[0].first, 2);
    EXPECT_NEAR(sym[0].second, 1.0, 1e-10);
    const auto anti = candidate_irreps_su2(1, {1, 1});
    ASSERT_EQ(anti.size(), 1u);
    EXPECT_EQ(anti[0].first, 0);
    EXPECT_NEAR(anti[0].second, 1.0, 1e-10);
}

TEST(Fit, SeedStability) {
    const auto prob = su2_problem(3, {2, 2});
    const auto a = fit_decomposition(prob, default_samples(prob), 100);
    const auto b = fit_decomposition(prob, default_samples(prob), 100000);
    for (std::size_t i = 0; i < a.coefficients.size(); ++i)
        EXPECT_LT(std::abs(a.coefficients[i].value - b.coefficients[i].value), 1e-7);
    const auto again = fit_decomposition(prob, default_samples(prob), 100);
    for (std::size_t i = 0; i < a.coefficients.size(); ++i)
        EXPECT_EQ(a.coefficients[i].value, again.coefficients[i].value);
}

TEST(Fit, Errors) {
    const auto prob = su2_problem(3, {2, 2});
    EXPECT_THROW(fit_decomposition(prob, 5, 1), DomainError);
    auto dup = prob;
    dup.candidates.push_back(dup.candidates.front());
    try {
        fit_decomposition(dup, default_samples(dup), 1);
        FAIL() << "expected rank deficiency";
    } catch (const RankDeficiencyError &e) {
        EXPECT_NE(std::string(e.what()).find("(0,0)"), std::string::npos) << e.what();
    }
    EXPECT_THROW(fit_decomposition(PlethysmProblem{SUIrrepLabel::su2(1), {2}, {}}, 10, 1), DomainError);
}

TEST(Fit, Su3SymmetricSquarePermanent) {
    const auto prob = su3_sym2_permanent_problem();
    const auto res = fit_decomposition(prob, default_samples(prob), 3);
    EXPECT_LT(res.residual, 1e-8);
    for (const auto &f : res.coefficients)
        EXPECT_LT(std::abs(f.value.imag()), 1e-8);

    // Diagonal table entries; every block with one copy is rank one, so the
    // off-diagonal entries are geometric means of the diagonal ones.
    const double c2 = 60.0 / 539, c5 = 6.0 / 49;
    const double c6 = 16.0 / 245, c10 = 16.0 / 441, c14 = 4.0 / 45;
    EXPECT_NEAR(coefficient(res, {12, 0, 0}, 8, 8).value.real(), 64.0 / 385, 1e-7);
    EXPECT_NEAR(coefficient(res, {10, 2, 0}, 8, 8).value.real(), c2, 1e-7);
    EXPECT_NEAR(coefficient(res, {10, 2, 0}, 4, 4).value.real(), c5, 1e-7);
    EXPECT_NEAR(coefficient(res, {10, 2, 0}, 8, 4).value.real(), std::sqrt(c2 * c5), 1e-7);
    EXPECT_NEAR(coefficient(res, {10, 2, 0}, 4, 8).value.real(), std::sqrt(c2 * c5), 1e-7);
    EXPECT_NEAR(coefficient(res, {8, 4, 0}, 8, 8).value.real(), c6, 1e-7);
    EXPECT_NEAR(coefficient(res, {8, 4, 0}, 4, 4).value.real(), c10, 1e-7);
    EXPECT_NEAR(coefficient(res, {8, 4, 0}, 0, 0).value.real(), c14, 1e-7);
    EXPECT_NEAR(coefficient(res, {8, 4, 0}, 8, 4).value.real(), std::sqrt(c6 * c10), 1e-7);
    EXPECT_NEAR(coefficient(res, {8, 4, 0}, 4, 8).value.real(), std::sqrt(c6 * c10), 1e-7);
    EXPECT_NEAR(coefficient(res, {8, 4, 0}, 8, 0).value.real(), std::sqrt(c6 * c14), 1e-7);
    EXPECT_NEAR(coefficient(res, {8, 4, 0}, 4, 0).value.real(), std::sqrt(c10 * c14), 1e-7);
    EXPECT_NEAR(coefficient(res, {6, 0, 0}, 4, 4).value.real(), 1.0 / 9, 1e-7);
    EXPECT_NEAR(coefficient(res, {6, 6, 0}, 4, 4).value.real(), 16.0 / 63, 1e-7);
    EXPECT_NEAR(coefficient(res, {0, 0, 0}, 0, 0).value.real(), 2.0 / 45, 1e-7);

    int nonzero = 0;
    for (const auto &f : res.coefficients) {
        const bool odd = level2_twice_j(f.candidate.left) % 4 != 0 || level2_twice_j(f.candidate.right) % 4 != 0;
        if (odd)
            EXPECT_LT(std::abs(f.value), 1e-9) << f.candidate.tag();
        if (std::abs(f.value) > 1e-9)
            ++nonzero;
    }
    EXPECT_EQ(nonzero, 17);
    EXPECT_TRUE(diagonal_sum_check(res, {6}).pass);

    const auto j = to_json(res);
    EXPECT_EQ(j["coefficients"].size(), 38u);
    EXPECT_EQ(j["coefficients"][0]["exact"], "64/385");
    EXPECT_EQ(j["coefficients"][0]["tag"], "(12,0,0) 444(4);444(4)");
}
