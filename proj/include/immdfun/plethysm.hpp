#pragma once

// Immanants of non-fundamental representation matrices, decomposed into
// D-functions by least squares over Haar-random group elements.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "errors.hpp"
#include "linalg.hpp"
#include "report.hpp"
#include "sunrep.hpp"
#include "symgroup.hpp"

namespace immdfun {

/// One basis function D^{(irrep)}_{left,right}.
struct Candidate {
    SUIrrepLabel irrep;
    GTPattern left, right;

    std::string tag() const {
        return irrep.str() + " " + pattern_tag(left) + ";" + pattern_tag(right);
    }
};

struct PlethysmProblem {
    SUIrrepLabel base_irrep; // rep whose matrix is immananted
    Partition partition;     // partition of dim(base_irrep)
    std::vector<Candidate> candidates;
};

struct FittedCoefficient {
    Candidate candidate;
    cplx value;
};

struct DecompositionResult {
    std::vector<FittedCoefficient> coefficients;
    double residual = 0.0; // max |Imm - fit| over samples
    double condition = 0.0; // of the sampled design matrix
    int sample_count = 0;
    std::uint64_t seed = 0;

    const FittedCoefficient *find(const Candidate &c) const {
        for (const auto &f : coefficients)
            if (f.candidate.irrep == c.irrep && f.candidate.left == c.left && f.candidate.right == c.right)
                return &f;
        return nullptr;
    }
};

/// Weight of the product of all base basis states: sum of their occupations.
inline WeightVector plethysm_weight(const SUIrrepLabel &base) {
    WeightVector w{std::vector<int>(base.m(), 0)};
    for (const auto &p : gt_basis(base)) {
        const auto o = weight_of(p).occupation;
        for (int i = 0; i < base.m(); ++i)
            w.occupation[i] += o[i];
    }
    return w;
}

/// All pattern pairs of `irrep` whose weight matches `w` up to a shift of
/// every occupation by the same amount (same SU(m) weight).
inline std::vector<Candidate> torus_candidates(const SUIrrepLabel &irrep, const WeightVector &w) {
    const int m = irrep.m();
    const int diff = irrep.total() - w.total();
    if (static_cast<int>(w.occupation.size()) != m || diff % m != 0)
        return {};
    WeightVector shifted = w;
    for (int &x : shifted.occupation) {
        x += diff / m;
        if (x < 0)
            return {};
    }
    const auto pats = weight_subspace(irrep, shifted);
    std::vector<Candidate> out;
    for (const auto &r : pats)
        for (const auto &t : pats)
            out.push_back({irrep, r, t});
    return out;
}

inline PlethysmProblem make_problem(const SUIrrepLabel &base, const Partition &p,
                                    const std::vector<SUIrrepLabel> &irreps) {
    const auto dim = dim_weyl(base);
    if (p.n() != static_cast<int>(dim))
        throw DomainError("plethysm: partition " + p.str() + " does not match base dimension " + std::to_string(dim));
    PlethysmProblem prob{base, p, {}};
    const auto w = plethysm_weight(base);
    for (const auto &irrep : irreps)
        for (auto &c : torus_candidates(irrep, w))
            prob.candidates.push_back(std::move(c));
    return prob;
}

inline cplx immanant_of_rep(const Partition &p, const ComplexMatrix &t) {
    if (p.length() == 1)
        return permanent_ryser(t);
    return immanant(p, t);
}

inline constexpr double max_design_condition = 1e8;

/// Least-squares fit of Imm^{partition}(T^{(base)}(U)) on the candidate
/// D-functions over `samples` Haar elements.
inline DecompositionResult fit_decomposition(const PlethysmProblem &prob, int samples, std::uint64_t seed) {
    const auto unknowns = static_cast<int>(prob.candidates.size());
    if (unknowns == 0)
        throw DomainError("fit_decomposition: no candidates");
    if (samples < 3 * unknowns)
        throw DomainError("fit_decomposition: need at least " + std::to_string(3 * unknowns) + " samples for " +
                          std::to_string(unknowns) + " unknowns");

    // Distinct irreps in first-seen order.
    std::vector<SUIrrepLabel> irreps;
    for (const auto &c : prob.candidates)
        if (std::find(irreps.begin(), irreps.end(), c.irrep) == irreps.end())
            irreps.push_back(c.irrep);

    const int m = prob.base_irrep.m();
    const auto base = irrep_for(prob.base_irrep);
    LiftOptions opt;
    opt.branch_shift = true;

    ComplexMatrix design(samples, unknowns);
    Eigen::VectorXcd target(samples);
    for (int s = 0; s < samples; ++s) {
        const auto u = haar_random_unitary(m, seed + static_cast<std::uint64_t>(s));
        target(s) = immanant_of_rep(prob.partition, lift(*base, u, opt).matrix);
        for (const auto &label : irreps) {
            const auto rep = irrep_for(label);
            const auto t = lift(*rep, u, opt).matrix;
            for (int c = 0; c < unknowns; ++c) {
                const auto &cand = prob.candidates[c];
                if (cand.irrep != label)
                    continue;
                design(s, c) = t(static_cast<Eigen::Index>(rep->index_of(cand.left)),
                                 static_cast<Eigen::Index>(rep->index_of(cand.right)));
            }
        }
    }

    Eigen::BDCSVD<ComplexMatrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &sv = svd.singularValues();
    const double cond = sv(0) / sv(sv.size() - 1);
    if (!(cond < max_design_condition)) {
        std::ostringstream os;
        os << "fit_decomposition: design matrix condition " << cond << " exceeds " << max_design_condition
           << "; near-dependent candidates:";
        const Eigen::VectorXcd null = svd.matrixV().col(sv.size() - 1);
        for (int c = 0; c < unknowns; ++c)
            if (std::abs(null(c)) > 0.1)
                os << ' ' << prob.candidates[c].tag();
        throw RankDeficiencyError(os.str());
    }
    const Eigen::VectorXcd coef = svd.solve(target);

    DecompositionResult out;
    out.residual = (design * coef - target).cwiseAbs().maxCoeff();
    out.condition = cond;
    out.sample_count = samples;
    out.seed = seed;
    for (int c = 0; c < unknowns; ++c)
        out.coefficients.push_back({prob.candidates[c], coef(c)});
    return out;
}

inline int default_samples(const PlethysmProblem &prob) {
    return std::max(60, 3 * static_cast<int>(prob.candidates.size()));
}

/// SU(2) problem for base spin twice_j/2 with candidates D^J_{00}, J = 0..N*j.
inline PlethysmProblem su2_problem(int twice_base_j, const Partition &p) {
    const auto base = SUIrrepLabel::su2(twice_base_j);
    std::vector<SUIrrepLabel> irreps;
    const int max_twice = p.n() * twice_base_j;
    for (int twice = 0; twice <= max_twice; twice += 2)
        irreps.push_back(SUIrrepLabel::su2(twice));
    return make_problem(base, p, irreps);
}

/// Spins (as 2J) whose D^J_{00} carries a coefficient above `tol`, with the
/// fitted coefficients.
inline std::vector<std::pair<int, double>> candidate_irreps_su2(int twice_base_j, const Partition &p,
                                                                 std::uint64_t seed = 20240101, double tol = 1e-9) {
    const auto prob = su2_problem(twice_base_j, p);
    const auto res = fit_decomposition(prob, default_samples(prob), seed);
    std::vector<std::pair<int, double>> out;
    for (const auto &f : res.coefficients)
        if (std::abs(f.value) > tol)
            out.emplace_back(f.candidate.irrep.row()[0] - f.candidate.irrep.row()[1], f.value.real());
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.first > b.first; });
    return out;
}

/// The (2,0) six-dimensional SU(3) rep, partition {6}, over the irreps of the
/// sixth symmetric plethysm that reach the zero weight.
inline PlethysmProblem su3_sym2_permanent_problem() {
    return make_problem(SUIrrepLabel({2, 0, 0}), Partition{6},
                        {SUIrrepLabel({12, 0, 0}), SUIrrepLabel({10, 2, 0}), SUIrrepLabel({8, 4, 0}),
                         SUIrrepLabel({6, 0, 0}), SUIrrepLabel({6, 6, 0}), SUIrrepLabel({0, 0, 0})});
}

/// Sum of diagonal coefficients (left == right) against dim of the partition.
inline VerificationReport diagonal_sum_check(const DecompositionResult &res, const Partition &p,
                                             double tol = 1e-8) {
    cplx sum = 0.0;
    for (const auto &f : res.coefficients)
        if (f.candidate.left == f.candidate.right)
            sum += f.value;
    VerificationReport rep;
    rep.suite = "plethysm-diagonal-sum";
    rep.partition = p.parts();
    rep.seed = res.seed;
    rep.residual = std::abs(sum - static_cast<double>(dim_sym(p)));
    rep.pass = rep.residual < tol;
    rep.details["diagonal_sum"] = {sum.real(), sum.imag()};
    rep.details["expected"] = dim_sym(p);
    return rep;
}

/// x ~ sign * (num/den) * sqrt(radicand) with radicand squarefree (1 for rationals).
struct ExactForm {
    long num = 0;
    long den = 1;
    int radicand = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den) * std::sqrt(radicand); }

    std::string str() const {
        std::ostringstream os;
        if (num == 0)
            return "0";
        if (radicand != 1 && den == 1 && (num == 1 || num == -1)) {
            os << (num < 0 ? "-" : "") << "sqrt(" << radicand << ')';
            return os.str();
        }
        os << num;
        if (den != 1)
            os << '/' << den;
        if (radicand != 1)
            os << "*sqrt(" << radicand << ')';
        return os.str();
    }
};

namespace detail {

inline bool squarefree(int r) {
    for (int d = 2; d * d <= r; ++d)
        if (r % (d * d) == 0)
            return false;
    return true;
}

inline std::optional<ExactForm> match_rational(double x, int max_den, double tol) {
    for (long q = 1; q <= max_den; ++q) {
        const long p = std::lround(x * static_cast<double>(q));
        if (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) < tol && std::gcd(p, q) == 1)
            return ExactForm{p, q, 1};
    }
    return std::nullopt;
}

} // namespace detail

/// Smallest-denominator rational within tol, else the surd with the smallest
/// den * radicand; nullopt when neither fits.
inline std::optional<ExactForm> recognize(double x, double tol = 1e-7, int max_den = 1000, int max_radicand = 200) {
    if (std::abs(x) < tol)
        return ExactForm{0, 1, 1};
    if (auto r = detail::match_rational(x, max_den, tol))
        return r;
    std::optional<ExactForm> best;
    for (int r = 2; r <= max_radicand; ++r) {
        if (!detail::squarefree(r))
            continue;
        const double root = std::sqrt(static_cast<double>(r));
        if (auto f = detail::match_rational(x / root, max_den, tol / root)) {
            f->radicand = r;
            if (!best || f->den * f->radicand < best->den * best->radicand)
                best = f;
        }
    }
    return best;
}

inline nlohmann::ordered_json to_json(const DecompositionResult &res, double zero_tol = 1e-9) {
    nlohmann::ordered_json j;
    j["sample_count"] = res.sample_count;
    j["seed"] = res.seed;
    j["residual"] = res.residual;
    j["condition"] = res.condition;
    auto coeffs = nlohmann::ordered_json::array();
    for (const auto &f : res.coefficients) {
        nlohmann::ordered_json c;
        c["irrep"] = f.candidate.irrep.row();
        c["left"] = f.candidate.left;
        c["right"] = f.candidate.right;
        c["tag"] = f.candidate.tag();
        c["value"] = {f.value.real(), f.value.imag()};
        if (std::abs(f.value) < zero_tol)
            c["exact"] = "0";
        else if (auto e = recognize(f.value.real()); e && std::abs(f.value.imag()) < zero_tol)
            c["exact"] = e->str();
        coeffs.push_back(c);
    }
    j["coefficients"] = coeffs;
    return j;
}

} // namespace immdfun
