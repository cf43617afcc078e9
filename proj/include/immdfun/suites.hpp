#pragma once

// Verification suites shared by the CLI and the acceptance runner.  Every
// suite returns one VerificationReport per checked configuration, in a fixed
// enumeration order.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dualspace.hpp"
#include "linalg.hpp"
#include "plethysm.hpp"
#include "report.hpp"
#include "sunrep.hpp"
#include "symgroup.hpp"

namespace immdfun {

inline constexpr std::uint64_t default_seed = 20240101;

namespace detail {

inline std::vector<int> iota_modes(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return v;
}

inline double complex_residual(cplx a, cplx b) { return std::abs(a - b); }

inline nlohmann::ordered_json pair_json(cplx z) { return {z.real(), z.imag()}; }

// Seeds for successive Haar samples of one suite.
class SeedStream {
  public:
    explicit SeedStream(std::uint64_t seed) : rng_(seed) {}
    std::uint64_t next() { return rng_(); }

  private:
    std::mt19937_64 rng_;
};

} // namespace detail

/// Imm^{2}(T) = cos(beta) and Imm^{1,1}(T) = 1 for Euler-angle SU(2) elements.
inline std::vector<VerificationReport> suite_su2_closed_forms(int samples = 50, std::uint64_t seed = default_seed,
                                                              double tol = 1e-12) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * M_PI), tilt(0.0, M_PI);
    std::vector<VerificationReport> out;
    for (int s = 0; s < samples; ++s) {
        const double a = angle(rng), b = tilt(rng), g = angle(rng);
        const auto u = su2_euler(a, b, g);
        const cplx per = immanant({2}, u.matrix()), det = immanant({1, 1}, u.matrix());
        VerificationReport rep;
        rep.suite = "su2-closed-forms";
        rep.m = 2;
        rep.seed = seed;
        rep.residual = std::max(std::abs(per - std::cos(b)), std::abs(det - 1.0));
        rep.pass = rep.residual < tol;
        rep.details["euler"] = {a, b, g};
        rep.details["permanent"] = detail::pair_json(per);
        rep.details["determinant"] = detail::pair_json(det);
        out.push_back(std::move(rep));
    }
    return out;
}

/// Imm^{p}(U) equals the sum of zero-weight diagonal D-functions of {p}.
inline std::vector<VerificationReport> suite_kostant(const std::vector<int> &ms, int samples = 25,
                                                     std::uint64_t seed = default_seed, double tol = 1e-9) {
    std::vector<VerificationReport> out;
    for (int m : ms) {
        detail::SeedStream seeds(seed + static_cast<std::uint64_t>(m));
        const auto full = detail::iota_modes(m);
        const WeightVector zero{std::vector<int>(m, 1)};
        for (int s = 0; s < samples; ++s) {
            const auto sample_seed = seeds.next();
            const auto u = haar_random_unitary(m, sample_seed);
            for (const auto &p : partitions_of(m)) {
                const cplx imm = immanant(p, u.matrix());
                const cplx dsum = diagonal_dsum(SUIrrepLabel::from_partition(p, m), zero, u);
                const cplx dual = immanant_via_duality(p, full, full, u.matrix());
                VerificationReport rep;
                rep.suite = "kostant";
                rep.m = m;
                rep.partition = p.parts();
                rep.selector_rows = full;
                rep.selector_cols = full;
                rep.seed = sample_seed;
                rep.residual = detail::complex_residual(imm, dsum);
                rep.pass = rep.residual < tol;
                rep.details["immanant"] = detail::pair_json(imm);
                rep.details["dfunction_sum"] = detail::pair_json(dsum);
                rep.details["duality_residual"] = detail::complex_residual(dual, imm);
                out.push_back(std::move(rep));
            }
        }
    }
    return out;
}

/// SU(3): permanent is one D of (3,0,0), Imm^{2,1} two D's of (2,1,0), det is 1.
inline std::vector<VerificationReport> suite_su3_identities(int samples = 25, std::uint64_t seed = default_seed,
                                                            double tol = 1e-10) {
    std::vector<VerificationReport> out;
    detail::SeedStream seeds(seed);
    const WeightVector zero{{1, 1, 1}};
    const SUIrrepLabel sym({3, 0, 0}), mixed({2, 1, 0});
    for (int s = 0; s < samples; ++s) {
        const auto sample_seed = seeds.next();
        const auto u = haar_random_unitary(3, sample_seed);
        const auto sym_pats = weight_subspace(sym, zero), mixed_pats = weight_subspace(mixed, zero);
        const cplx per = immanant({3}, u.matrix()), imm = immanant({2, 1}, u.matrix());
        const cplx det = immanant({1, 1, 1}, u.matrix());
        const cplx d_per = diagonal_dsum(sym, zero, u), d_imm = diagonal_dsum(mixed, zero, u);
        VerificationReport rep;
        rep.suite = "su3-identities";
        rep.m = 3;
        rep.seed = sample_seed;
        rep.residual = std::max({std::abs(per - d_per), std::abs(imm - d_imm), std::abs(det - 1.0)});
        rep.pass = rep.residual < tol && sym_pats.size() == 1 && mixed_pats.size() == 2;
        rep.details["permanent_terms"] = sym_pats.size();
        rep.details["mixed_terms"] = mixed_pats.size();
        rep.details["permanent"] = detail::pair_json(per);
        rep.details["mixed"] = detail::pair_json(imm);
        rep.details["determinant"] = detail::pair_json(det);
        out.push_back(std::move(rep));
    }
    return out;
}

/// Principal submatrices: Imm^{p} of rows/cols k equals the diagonal D-sum of
/// {p} over the weight with occupation of k.
inline std::vector<VerificationReport> suite_principal_submatrices(const std::vector<int> &ms, int samples = 10,
                                                        std::uint64_t seed = default_seed, double tol = 1e-9) {
    std::vector<VerificationReport> out;
    for (int m : ms) {
        detail::SeedStream seeds(seed + 100 + static_cast<std::uint64_t>(m));
        for (int s = 0; s < samples; ++s) {
            const auto sample_seed = seeds.next();
            const auto u = haar_random_unitary(m, sample_seed);
            for (int size = 2; size <= std::min(4, m - 1); ++size) {
                const auto selectors = index_subsets(m, size);
                for (const auto &p : partitions_of(size)) {
                    const auto label = SUIrrepLabel::from_partition(p, m);
                    const auto irrep = irrep_for(label);
                    const auto t = lift(*irrep, u).matrix;
                    for (const auto &k : selectors) {
                        const auto w = occupation_of(m, k);
                        cplx dsum = 0.0;
                        for (auto i : irrep->weight_indices(w))
                            dsum += t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
                        const cplx imm = immanant(p, submatrix(u.matrix(), SubmatrixSelector::principal(k)));
                        const cplx dual = immanant_via_duality(p, k, k, u.matrix());
                        VerificationReport rep;
                        rep.suite = "principal-submatrices";
                        rep.m = m;
                        rep.partition = p.parts();
                        rep.selector_rows = k;
                        rep.selector_cols = k;
                        rep.seed = sample_seed;
                        rep.residual = detail::complex_residual(imm, dsum);
                        rep.pass = rep.residual < tol;
                        rep.details["weight"] = w.cartan_weight();
                        rep.details["terms"] = irrep->weight_indices(w).size();
                        rep.details["duality_residual"] = detail::complex_residual(dual, imm);
                        out.push_back(std::move(rep));
                    }
                }
            }
        }
    }
    return out;
}

/// Coaxial products of complementary principal submatrices of a 4x4 element.
inline std::vector<VerificationReport> suite_littlewood(int samples = 100, std::uint64_t seed = default_seed,
                                                        double tol = 1e-9) {
    std::vector<VerificationReport> out;
    detail::SeedStream seeds(seed + 200);
    for (int s = 0; s < samples; ++s) {
        const auto sample_seed = seeds.next();
        const auto u = haar_random_unitary(4, sample_seed);
        auto rep = verify_littlewood(u, tol, sample_seed);
        double dual = 0.0;
        const auto full = detail::iota_modes(4);
        for (const auto &p : {Partition{3, 1}, Partition{4}})
            dual = std::max(dual, std::abs(immanant_via_duality(p, full, full, u.matrix()) - immanant(p, u.matrix())));
        for (const auto &k : index_subsets(4, 3))
            dual = std::max(dual, std::abs(immanant_via_duality({3}, k, k, u.matrix()) -
                                           immanant({3}, submatrix(u.matrix(), SubmatrixSelector::principal(k)))));
        rep.details["duality_residual"] = dual;
        out.push_back(std::move(rep));
    }
    return out;
}

namespace detail {

// Cross-checks attached to a conjecture report: the coefficient matrix
// contracted with D-functions, and the duality evaluation, against the
// definitional immanant at one Haar element.
inline void attach_conjecture_checks(VerificationReport &rep, const Partition &p, std::uint64_t sample_seed) {
    const auto u = haar_random_unitary(rep.m, sample_seed);
    const auto &k = rep.selector_rows, &q = rep.selector_cols;
    const cplx imm = immanant(p, submatrix(u.matrix(), SubmatrixSelector(k, q)));
    const auto cm = coefficient_matrix(rep.m, p, k, q);
    rep.details["check_seed"] = sample_seed;
    rep.details["reproduction_residual"] = std::abs(contract_with_dfunctions(cm, u) - imm);
    rep.details["duality_residual"] = std::abs(immanant_via_duality(p, k, q, u.matrix()) - imm);
}

} // namespace detail

/// Coefficient matrices of all selector pairs (principal pairs skipped unless
/// `all_selectors`); each should hold dim{p} entries equal to +1.
inline std::vector<VerificationReport> suite_conjecture(int m, const Partition &p, bool all_selectors = true,
                                                        std::uint64_t seed = default_seed, double tol = 1e-8) {
    auto reports = conjecture_scan(m, p, all_selectors, tol);
    detail::SeedStream seeds(seed + 300);
    for (auto &rep : reports) {
        rep.seed = seed;
        detail::attach_conjecture_checks(rep, p, seeds.next());
    }
    return reports;
}

/// The generic selector pairs singled out for SU(4) and SU(5).
inline std::vector<VerificationReport> suite_conjecture_named(std::uint64_t seed = default_seed, double tol = 1e-8) {
    struct Case {
        int m;
        Partition p;
        std::vector<int> k, q;
    };
    const std::vector<Case> cases{{4, {2, 1}, {2, 3, 4}, {1, 3, 4}},
                                  {4, {2, 1}, {2, 3, 4}, {1, 2, 4}},
                                  {4, {2, 1}, {1, 3, 4}, {1, 2, 4}},
                                  {5, {2, 1}, {2, 3, 5}, {1, 3, 4}},
                                  {5, {3, 1}, {1, 3, 4, 5}, {1, 2, 3, 5}}};
    std::vector<VerificationReport> out;
    detail::SeedStream seeds(seed + 400);
    for (const auto &c : cases) {
        auto rep = conjecture_report(c.m, c.p, c.k, c.q, tol);
        rep.seed = seed;
        detail::attach_conjecture_checks(rep, c.p, seeds.next());
        out.push_back(std::move(rep));
    }
    return out;
}

namespace detail {

inline nlohmann::ordered_json compare_coefficient(const FittedCoefficient &f, double expected, double tol,
                                                  double &worst) {
    const double dev = std::abs(f.value - expected);
    worst = std::max(worst, dev);
    nlohmann::ordered_json j;
    j["tag"] = f.candidate.tag();
    j["value"] = pair_json(f.value);
    if (auto e = recognize(f.value.real(), tol))
        j["exact"] = e->str();
    j["expected"] = expected;
    j["deviation"] = dev;
    return j;
}

inline int level2_twice_j(const GTPattern &p) {
    const auto &row = p[p.size() - 2];
    return row[0] - row[1];
}

} // namespace detail

/// Imm^{2,2} of the spin-3/2 matrix as D^J_{00} combination.
inline VerificationReport suite_plethysm_su2(std::uint64_t seed = default_seed, double tol = 1e-8,
                                             double zero_tol = 1e-9) {
    const Partition p{2, 2};
    const auto prob = su2_problem(3, p);
    const auto res = fit_decomposition(prob, default_samples(prob), seed);
    const std::map<int, double> expected{{8, 26.0 / 35}, {4, 6.0 / 7}, {0, 2.0 / 5}};
    double worst = 0.0, worst_zero = 0.0;
    auto rows = nlohmann::ordered_json::array();
    for (const auto &f : res.coefficients) {
        const int twice_j = f.candidate.irrep.row()[0];
        if (auto it = expected.find(twice_j); it != expected.end()) {
            rows.push_back(detail::compare_coefficient(f, it->second, 1e-7, worst));
        } else {
            worst_zero = std::max(worst_zero, std::abs(f.value));
        }
    }
    const auto diag = diagonal_sum_check(res, p, tol);
    VerificationReport rep;
    rep.suite = "plethysm-su2";
    rep.m = 2;
    rep.partition = p.parts();
    rep.seed = seed;
    rep.residual = std::max(worst, diag.residual);
    rep.pass = worst < tol && worst_zero < zero_tol && diag.pass && res.residual < tol;
    rep.details["fit_residual"] = res.residual;
    rep.details["samples"] = res.sample_count;
    rep.details["coefficients"] = rows;
    rep.details["largest_other"] = worst_zero;
    rep.details["diagonal_sum"] = diag.details["diagonal_sum"];
    return rep;
}

/// Expected SU(3) (2,0) permanent coefficients keyed by (irrep row, 2J left, 2J right).
inline std::vector<std::tuple<std::vector<int>, int, int, double>> su3_permanent_table() {
    const double c2 = 60.0 / 539, c5 = 6.0 / 49, c6 = 16.0 / 245, c10 = 16.0 / 441, c14 = 4.0 / 45;
    return {
        {{12, 0, 0}, 8, 8, 64.0 / 385},
        {{10, 2, 0}, 8, 8, c2},
        {{10, 2, 0}, 8, 4, 6.0 / 49 * std::sqrt(10.0 / 11)},
        {{10, 2, 0}, 4, 8, 6.0 / 49 * std::sqrt(10.0 / 11)},
        {{10, 2, 0}, 4, 4, c5},
        {{8, 4, 0}, 8, 8, c6},
        // The (4,4) block is rank one: off-diagonal entries are sqrt(c_rr c_ss).
        {{8, 4, 0}, 8, 4, 16.0 / (147 * std::sqrt(5.0))},
        {{8, 4, 0}, 8, 0, 8.0 / 105},
        {{8, 4, 0}, 4, 8, 16.0 / (147 * std::sqrt(5.0))},
        {{8, 4, 0}, 4, 4, c10},
        {{8, 4, 0}, 4, 0, 8.0 / (63 * std::sqrt(5.0))},
        {{8, 4, 0}, 0, 8, 8.0 / 105},
        {{8, 4, 0}, 0, 4, 8.0 / (63 * std::sqrt(5.0))},
        {{8, 4, 0}, 0, 0, c14},
        {{6, 0, 0}, 4, 4, 1.0 / 9},
        {{6, 6, 0}, 4, 4, 16.0 / 63},
        {{0, 0, 0}, 0, 0, 2.0 / 45},
    };
}

/// Permanent of the six-dimensional (2,0) SU(3) matrix as D-function combination.
inline VerificationReport suite_plethysm_su3(std::uint64_t seed = default_seed, double tol = 1e-7,
                                             double zero_tol = 1e-9) {
    const Partition p{6};
    const auto prob = su3_sym2_permanent_problem();
    const auto res = fit_decomposition(prob, default_samples(prob), seed);
    const auto table = su3_permanent_table();
    double worst = 0.0, worst_zero = 0.0;
    int matched = 0;
    auto rows = nlohmann::ordered_json::array();
    for (const auto &f : res.coefficients) {
        const int lj = detail::level2_twice_j(f.candidate.left), rj = detail::level2_twice_j(f.candidate.right);
        bool listed = false;
        for (const auto &[row, l, r, value] : table) {
            if (row != f.candidate.irrep.row() || l != lj || r != rj)
                continue;
            listed = true;
            double dev = 0.0;
            rows.push_back(detail::compare_coefficient(f, value, tol, dev));
            worst = std::max(worst, dev);
            if (dev < tol)
                ++matched;
        }
        if (!listed)
            worst_zero = std::max(worst_zero, std::abs(f.value));
    }
    const auto diag = diagonal_sum_check(res, p, 1e-8);
    VerificationReport rep;
    rep.suite = "plethysm-su3";
    rep.m = 3;
    rep.partition = p.parts();
    rep.seed = seed;
    rep.residual = std::max(worst, diag.residual);
    rep.pass = matched == static_cast<int>(table.size()) && worst_zero < zero_tol && diag.pass && res.residual < 1e-8;
    rep.details["fit_residual"] = res.residual;
    rep.details["samples"] = res.sample_count;
    rep.details["candidates"] = res.coefficients.size();
    rep.details["matched"] = matched;
    rep.details["coefficients"] = rows;
    rep.details["largest_unlisted"] = worst_zero;
    rep.details["diagonal_sum"] = diag.details["diagonal_sum"];
    return rep;
}

/// Structural checks: S_n characters, Young's orthogonal form, u(m)
/// commutators, lift homomorphism/unitarity and GT counts.
inline std::vector<VerificationReport> suite_structural(std::uint64_t seed = default_seed) {
    std::vector<VerificationReport> out;
    auto push = [&](std::string name, double residual, double tol, nlohmann::ordered_json details = {}) {
        VerificationReport rep;
        rep.suite = "structural";
        rep.seed = seed;
        rep.residual = residual;
        rep.pass = residual < tol;
        rep.details["check"] = std::move(name);
        if (!details.is_null())
            rep.details["info"] = std::move(details);
        out.push_back(std::move(rep));
    };

    // Row orthogonality of characters weighted by class sizes.
    double orth = 0.0;
    for (int n = 1; n <= 6; ++n) {
        const auto parts = partitions_of(n);
        for (const auto &a : parts)
            for (const auto &b : parts) {
                double sum = 0.0;
                for (const auto &cls : parts)
                    sum += static_cast<double>(class_size(cls)) * character(a, cls) * character(b, cls);
                orth = std::max(orth, std::abs(sum / static_cast<double>(factorial(n)) - (a == b ? 1.0 : 0.0)));
            }
    }
    push("character-orthogonality", orth, 1e-12);

    std::mt19937_64 rng(seed);
    double hom = 0.0;
    for (int n = 2; n <= 5; ++n)
        for (const auto &p : partitions_of(n))
            for (int t = 0; t < 10; ++t) {
                std::vector<int> a(n), b(n);
                std::iota(a.begin(), a.end(), 1);
                std::iota(b.begin(), b.end(), 1);
                std::shuffle(a.begin(), a.end(), rng);
                std::shuffle(b.begin(), b.end(), rng);
                const Permutation pa(a), pb(b);
                const Eigen::MatrixXd ya = young_orthogonal(p, pa).entries;
                const Eigen::MatrixXd yb = young_orthogonal(p, pb).entries;
                const Eigen::MatrixXd yab = young_orthogonal(p, compose(pa, pb)).entries;
                hom = std::max(hom, (ya * yb - yab).cwiseAbs().maxCoeff());
                hom = std::max(hom, (ya.transpose() * ya - Eigen::MatrixXd::Identity(ya.rows(), ya.cols()))
                                        .cwiseAbs()
                                        .maxCoeff());
            }
    push("young-orthogonal-homomorphism", hom, 1e-12);

    const std::vector<SUIrrepLabel> irreps{SUIrrepLabel({3, 0}),       SUIrrepLabel({2, 1, 0}),
                                           SUIrrepLabel({4, 2, 0}),    SUIrrepLabel({2, 1, 1, 0}),
                                           SUIrrepLabel({3, 1, 0, 0}), SUIrrepLabel({2, 1, 0, 0, 0})};
    double comm = 0.0;
    for (const auto &label : irreps) {
        const auto irrep = irrep_for(label);
        const int m = label.m();
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j)
                for (int k = 1; k <= m; ++k)
                    for (int l = 1; l <= m; ++l) {
                        const Eigen::MatrixXd lhs = irrep->generator(i, j) * irrep->generator(k, l) -
                                                    irrep->generator(k, l) * irrep->generator(i, j);
                        Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(lhs.rows(), lhs.cols());
                        if (j == k)
                            rhs += irrep->generator(i, l);
                        if (i == l)
                            rhs -= irrep->generator(k, j);
                        comm = std::max(comm, (lhs - rhs).cwiseAbs().maxCoeff());
                    }
    }
    push("um-commutators", comm, 1e-9);

    double unit = 0.0, lhom = 0.0;
    for (const auto &label : irreps) {
        const auto irrep = irrep_for(label);
        for (int t = 0; t < 5; ++t) {
            const auto a = haar_random_unitary(label.m(), rng()), b = haar_random_unitary(label.m(), rng());
            const ComplexMatrix ta = lift(*irrep, a).matrix, tb = lift(*irrep, b).matrix;
            const ComplexMatrix tab = lift(*irrep, UnitaryElement(a.matrix() * b.matrix(), 1e-9)).matrix;
            const auto d = static_cast<Eigen::Index>(irrep->dim());
            unit = std::max(unit, (ta.adjoint() * ta - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
            lhom = std::max(lhom, (ta * tb - tab).cwiseAbs().maxCoeff());
        }
    }
    push("lift-unitarity", unit, 1e-10);
    push("lift-homomorphism", lhom, 1e-9);

    double gt = 0.0;
    auto counts = nlohmann::ordered_json::array();
    for (const auto &label : std::vector<SUIrrepLabel>{SUIrrepLabel({4, 0}), SUIrrepLabel({2, 1, 0}),
                                                       SUIrrepLabel({12, 0, 0}), SUIrrepLabel({10, 2, 0}),
                                                       SUIrrepLabel({8, 4, 0}), SUIrrepLabel({3, 1, 0, 0}),
                                                       SUIrrepLabel({2, 1, 1, 0, 0})}) {
        const auto n = gt_basis(label).size();
        counts.push_back({{"irrep", label.row()}, {"patterns", n}, {"weyl", dim_weyl(label)}});
        gt = std::max(gt, std::abs(static_cast<double>(n) - static_cast<double>(dim_weyl(label))));
    }
    push("gt-count-vs-weyl", gt, 0.5, counts);
    return out;
}

} // namespace immdfun
