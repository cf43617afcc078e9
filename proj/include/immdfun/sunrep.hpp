#pragma once

// SU(m) irreps in the Gelfand-Tsetlin basis.
//
// Level l of a pattern is the u(l) highest weight for the first l modes; the
// chain is u(m) > u(m-1) > ... > u(1) with u(l) acting on modes 1..l.  Simple
// lowering operators C_{l+1,l} have real non-negative matrix elements.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "errors.hpp"
#include "linalg.hpp"
#include "symgroup.hpp"

namespace immdfun {

/// Highest weight of a polynomial u(m) irrep. `row` may carry trailing
/// full columns (as it does inside an N-fold tensor power); `normalized()`
/// strips them so the last entry is 0.
class SUIrrepLabel {
  public:
    SUIrrepLabel() = default;
    explicit SUIrrepLabel(std::vector<int> row) : row_(std::move(row)) {
        if (row_.empty())
            throw DomainError("irrep label: empty row");
        for (std::size_t i = 0; i < row_.size(); ++i) {
            if (row_[i] < 0 || (i > 0 && row_[i] > row_[i - 1]))
                throw DomainError("irrep label: row must be weakly decreasing and non-negative");
        }
    }

    /// Row of a partition padded with zeros to length m; throws if it has more than m parts.
    static SUIrrepLabel from_partition(const Partition &p, int m) {
        if (static_cast<int>(p.length()) > m)
            throw DomainError("partition " + p.str() + " has more than m = " + std::to_string(m) + " rows");
        std::vector<int> row(m, 0);
        std::copy(p.parts().begin(), p.parts().end(), row.begin());
        return SUIrrepLabel(std::move(row));
    }

    /// SU(2) spin J given as twice_j = 2J.
    static SUIrrepLabel su2(int twice_j) { return SUIrrepLabel({twice_j, 0}); }

    int m() const { return static_cast<int>(row_.size()); }
    const std::vector<int> &row() const { return row_; }
    int total() const { return std::accumulate(row_.begin(), row_.end(), 0); }

    SUIrrepLabel normalized() const {
        auto r = row_;
        const int last = r.back();
        for (int &x : r)
            x -= last;
        return SUIrrepLabel(std::move(r));
    }

    std::vector<int> round_label() const {
        std::vector<int> d;
        for (std::size_t i = 0; i + 1 < row_.size(); ++i)
            d.push_back(row_[i] - row_[i + 1]);
        return d;
    }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < row_.size(); ++i)
            os << (i ? "," : "") << row_[i];
        os << ')';
        return os.str();
    }

    friend bool operator==(const SUIrrepLabel &, const SUIrrepLabel &) = default;
    friend auto operator<=>(const SUIrrepLabel &a, const SUIrrepLabel &b) { return a.row_ <=> b.row_; }

  private:
    std::vector<int> row_;
};

/// rows[0] is the top row (length m); rows[k] has length m - k.
using GTPattern = std::vector<std::vector<int>>;

struct WeightVector {
    std::vector<int> occupation;

    std::vector<int> cartan_weight() const {
        std::vector<int> w;
        for (std::size_t i = 0; i + 1 < occupation.size(); ++i)
            w.push_back(occupation[i] - occupation[i + 1]);
        return w;
    }
    int total() const { return std::accumulate(occupation.begin(), occupation.end(), 0); }

    friend bool operator==(const WeightVector &, const WeightVector &) = default;
    friend auto operator<=>(const WeightVector &a, const WeightVector &b) { return a.occupation <=> b.occupation; }
};

inline WeightVector weight_of(const GTPattern &p) {
    const int m = static_cast<int>(p.size());
    WeightVector w{std::vector<int>(m)};
    int below = 0;
    for (int level = 1; level <= m; ++level) {
        const auto &r = p[m - level];
        const int s = std::accumulate(r.begin(), r.end(), 0);
        w.occupation[level - 1] = s - below;
        below = s;
    }
    return w;
}

inline bool satisfies_betweenness(const GTPattern &p) {
    for (std::size_t k = 0; k + 1 < p.size(); ++k)
        for (std::size_t i = 0; i < p[k + 1].size(); ++i)
            if (!(p[k][i] >= p[k + 1][i] && p[k + 1][i] >= p[k][i + 1]))
                return false;
    return true;
}

/// prod_{i<j} (row_i - row_j + j - i) / (j - i)
inline std::uint64_t dim_weyl(const SUIrrepLabel &irrep) {
    const auto &r = irrep.row();
    const int m = irrep.m();
    unsigned __int128 num = 1, den = 1;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            num *= static_cast<unsigned>(r[i] - r[j] + j - i);
            den *= static_cast<unsigned>(j - i);
        }
    return static_cast<std::uint64_t>(num / den);
}

/// All GT patterns of the irrep, descending lexicographic on the rows read top to bottom.
inline std::vector<GTPattern> gt_basis(const SUIrrepLabel &irrep) {
    std::vector<GTPattern> out;
    GTPattern cur{irrep.row()};
    auto rec = [&](auto &&self) -> void {
        const auto &top = cur.back();
        if (top.size() == 1) {
            out.push_back(cur);
            return;
        }
        std::vector<int> next(top.size() - 1);
        auto fill = [&](auto &&fself, std::size_t i) -> void {
            if (i == next.size()) {
                cur.push_back(next);
                self(self);
                cur.pop_back();
                return;
            }
            const std::vector<int> t = cur.back();
            for (int v = t[i]; v >= t[i + 1]; --v) {
                next[i] = v;
                fself(fself, i + 1);
            }
        };
        fill(fill, 0);
    };
    rec(rec);
    // The recursion already emits descending order; sort anyway so the
    // ordering does not depend on the traversal.
    std::sort(out.begin(), out.end(), [](const GTPattern &a, const GTPattern &b) { return a > b; });
    return out;
}

inline std::string pattern_str(const GTPattern &p) {
    std::ostringstream os;
    os << '[';
    for (std::size_t k = 0; k < p.size(); ++k) {
        os << (k ? "," : "") << '[';
        for (std::size_t i = 0; i < p[k].size(); ++i)
            os << (i ? "," : "") << p[k][i];
        os << ']';
    }
    os << ']';
    return os.str();
}

/// Human-readable tag: occupation digits (comma separated if any exceeds 9),
/// then the su(l) labels of levels m-1 .. 3 in round brackets, then the su(2)
/// spin J of level 2.
inline std::string pattern_tag(const GTPattern &p) {
    std::ostringstream os;
    const auto occ = weight_of(p).occupation;
    const bool wide = std::any_of(occ.begin(), occ.end(), [](int n) { return n > 9; });
    for (std::size_t i = 0; i < occ.size(); ++i)
        os << (wide && i ? "," : "") << occ[i];
    const int m = static_cast<int>(p.size());
    for (int level = m - 1; level >= 2; --level) {
        const auto &r = p[m - level];
        os << '(';
        if (level == 2) {
            const int twice_j = r[0] - r[1];
            if (twice_j % 2)
                os << twice_j << "/2";
            else
                os << twice_j / 2;
        } else {
            std::vector<int> d;
            for (std::size_t i = 0; i + 1 < r.size(); ++i)
                d.push_back(r[i] - r[i + 1]);
            while (d.size() > 1 && d.back() == 0)
                d.pop_back();
            for (std::size_t i = 0; i < d.size(); ++i)
                os << (i ? "," : "") << d[i];
        }
        os << ')';
    }
    return os.str();
}

inline std::size_t max_irrep_dim() {
    if (const char *env = std::getenv("IMMDFUN_MAX_DIM")) {
        char *end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && v > 0)
            return v;
    }
    return 512;
}

/// Patterns, weights and generator matrices of one irrep. Generators are
/// built once on first use and are read-only afterwards.
class Irrep {
  public:
    explicit Irrep(SUIrrepLabel label) : label_(std::move(label)), patterns_(gt_basis(label_)) {
        for (std::size_t i = 0; i < patterns_.size(); ++i) {
            index_.emplace(patterns_[i], i);
            weights_.push_back(weight_of(patterns_[i]));
        }
    }

    Irrep(const Irrep &) = delete;
    Irrep &operator=(const Irrep &) = delete;

    const SUIrrepLabel &label() const { return label_; }
    int m() const { return label_.m(); }
    std::size_t dim() const { return patterns_.size(); }
    const std::vector<GTPattern> &patterns() const { return patterns_; }
    const WeightVector &weight(std::size_t i) const { return weights_[i]; }

    std::size_t index_of(const GTPattern &p) const {
        auto it = index_.find(p);
        if (it == index_.end())
            throw DomainError("pattern " + pattern_str(p) + " does not belong to irrep " + label_.str());
        return it->second;
    }

    /// Basis indices with the given occupation, in canonical order.
    std::vector<std::size_t> weight_indices(const WeightVector &w) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < weights_.size(); ++i)
            if (weights_[i] == w)
                out.push_back(i);
        return out;
    }

    /// Matrix of C_{ij} (1-based mode indices).
    const Eigen::MatrixXd &generator(int i, int j) const {
        if (i < 1 || j < 1 || i > m() || j > m())
            throw DomainError("generator: mode index out of range");
        std::call_once(built_, [this] { build_generators(); });
        return generators_[(i - 1) * m() + (j - 1)];
    }

  private:
    // <M - e_{k,l}| C_{l+1,l} |M>, squared.
    double lowering_sq(const GTPattern &p, int l, int k) const {
        const int m = this->m();
        auto entry = [&](int kk, int ll) { return p[m - ll][kk - 1]; };
        const int mkl = entry(k, l);
        double num = 1.0;
        for (int kp = 1; kp <= l + 1; ++kp)
            num *= entry(kp, l + 1) - mkl + k - kp + 1;
        for (int kp = 1; kp <= l - 1; ++kp)
            num *= entry(kp, l - 1) - mkl + k - kp;
        double den = 1.0;
        for (int kp = 1; kp <= l; ++kp) {
            if (kp == k)
                continue;
            den *= static_cast<double>(entry(kp, l) - mkl + k - kp + 1) * (entry(kp, l) - mkl + k - kp);
        }
        return -num / den;
    }

    void build_generators() const {
        const int m = this->m();
        const auto d = static_cast<Eigen::Index>(dim());
        generators_.assign(static_cast<std::size_t>(m * m), Eigen::MatrixXd::Zero(d, d));
        auto at = [&](int i, int j) -> Eigen::MatrixXd & { return generators_[(i - 1) * m + (j - 1)]; };

        for (Eigen::Index a = 0; a < d; ++a)
            for (int i = 1; i <= m; ++i)
                at(i, i)(a, a) = weights_[a].occupation[i - 1];

        for (int l = 1; l < m; ++l) {
            auto &lower = at(l + 1, l);
            for (Eigen::Index a = 0; a < d; ++a) {
                for (int k = 1; k <= l; ++k) {
                    GTPattern target = patterns_[a];
                    --target[m - l][k - 1];
                    if (!satisfies_betweenness(target))
                        continue;
                    const double sq = lowering_sq(patterns_[a], l, k);
                    if (sq < -1e-12)
                        throw std::logic_error("negative squared GT matrix element");
                    lower(static_cast<Eigen::Index>(index_.at(target)), a) = std::sqrt(std::max(sq, 0.0));
                }
            }
            at(l, l + 1) = lower.transpose();
        }
        // [C_{ik}, C_{kj}] = C_{ij} for i != j.
        for (int gap = 2; gap < m; ++gap) {
            for (int i = 1; i + gap <= m; ++i) {
                const int j = i + gap;
                at(i, j) = at(i, j - 1) * at(j - 1, j) - at(j - 1, j) * at(i, j - 1);
                at(j, i) = at(j, j - 1) * at(j - 1, i) - at(j - 1, i) * at(j, j - 1);
            }
        }
    }

    SUIrrepLabel label_;
    std::vector<GTPattern> patterns_;
    std::vector<WeightVector> weights_;
    std::map<GTPattern, std::size_t> index_;
    mutable std::once_flag built_;
    mutable std::vector<Eigen::MatrixXd> generators_;
};

/// Shared per-label cache; safe for concurrent use.
inline std::shared_ptr<const Irrep> irrep_for(const SUIrrepLabel &label) {
    static std::mutex mu;
    static std::map<SUIrrepLabel, std::shared_ptr<const Irrep>> cache;
    std::lock_guard lock(mu);
    auto &slot = cache[label];
    if (!slot)
        slot = std::make_shared<const Irrep>(label);
    return slot;
}

inline std::vector<GTPattern> weight_subspace(const SUIrrepLabel &irrep, const WeightVector &w) {
    std::vector<GTPattern> out;
    for (const auto &p : gt_basis(irrep))
        if (weight_of(p) == w)
            out.push_back(p);
    return out;
}

inline ComplexMatrix generator_matrix(const SUIrrepLabel &irrep, int i, int j) {
    return irrep_for(irrep)->generator(i, j).cast<cplx>();
}

struct LiftOptions {
    double branch_eps = 1e-6;
    /// Lift U*g for a small random g instead, then undo g. Avoids refusing
    /// elements with an eigenvalue at -1.
    bool branch_shift = false;
    std::uint64_t shift_seed = 0x51f7;
};

struct LiftedRep {
    SUIrrepLabel irrep;
    ComplexMatrix matrix;
};

namespace detail {

// Principal logarithm X (anti-Hermitian, exp X = u) from the Schur form of a
// normal matrix; eigenphases in (-pi, pi].
inline ComplexMatrix principal_log(const ComplexMatrix &u, double branch_eps) {
    Eigen::ComplexSchur<ComplexMatrix> schur(u);
    const ComplexMatrix &q = schur.matrixU();
    const auto n = u.rows();
    Eigen::VectorXcd phases(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double phi = std::arg(schur.matrixT()(i, i));
        if (M_PI - std::abs(phi) < branch_eps)
            throw BranchCutError("lift: eigenphase " + std::to_string(phi) + " lies on the branch cut at -1", phi);
        phases(i) = cplx(0.0, phi);
    }
    return q * phases.asDiagonal() * q.adjoint();
}

inline ComplexMatrix exp_rep(const Irrep &irrep, const ComplexMatrix &x) {
    const int m = irrep.m();
    const auto d = static_cast<Eigen::Index>(irrep.dim());
    // A = sum_ij x_ij C_ij is anti-Hermitian; exponentiate -iA as Hermitian.
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            const cplx c = x(i - 1, j - 1);
            if (c != 0.0)
                h += (cplx(0.0, -1.0) * c) * irrep.generator(i, j).cast<cplx>();
        }
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const Eigen::VectorXcd phase = (es.eigenvalues().cast<cplx>() * cplx(0.0, 1.0)).array().exp();
    return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

inline ComplexMatrix small_su_element(int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix h(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            h(i, j) = cplx(gauss(rng), gauss(rng));
    h = 0.5 * (h + h.adjoint()).eval();
    h -= (h.trace() / static_cast<double>(m)) * ComplexMatrix::Identity(m, m);
    h *= 0.3 / h.norm();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const Eigen::VectorXcd phase = (es.eigenvalues().cast<cplx>() * cplx(0.0, 1.0)).array().exp();
    return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace detail

/// T^{(lambda)}(U) = exp(sum_ij X_ij C_ij) with X the principal log of U.
inline LiftedRep lift(const Irrep &irrep, const UnitaryElement &u, const LiftOptions &opt = {}) {
    if (u.m() != irrep.m())
        throw DomainError("lift: element is " + std::to_string(u.m()) + "x" + std::to_string(u.m()) +
                          " but irrep " + irrep.label().str() + " is for m = " + std::to_string(irrep.m()));
    if (irrep.dim() > max_irrep_dim())
        throw ResourceError("lift: irrep dimension " + std::to_string(irrep.dim()) + " exceeds cap " +
                            std::to_string(max_irrep_dim()) + " (IMMDFUN_MAX_DIM)");
    try {
        return {irrep.label(), detail::exp_rep(irrep, detail::principal_log(u.matrix(), opt.branch_eps))};
    } catch (const BranchCutError &) {
        if (!opt.branch_shift)
            throw;
    }
    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        const ComplexMatrix g = detail::small_su_element(u.m(), opt.shift_seed + attempt);
        try {
            const ComplexMatrix shifted = detail::exp_rep(irrep, detail::principal_log(u.matrix() * g, opt.branch_eps));
            const ComplexMatrix rep_g = detail::exp_rep(irrep, detail::principal_log(g, opt.branch_eps));
            return {irrep.label(), shifted * rep_g.adjoint()};
        } catch (const BranchCutError &) {
        }
    }
    throw BranchCutError("lift: branch shift failed to move off the cut", M_PI);
}

inline LiftedRep lift(const SUIrrepLabel &label, const UnitaryElement &u, const LiftOptions &opt = {}) {
    return lift(*irrep_for(label), u, opt);
}

/// Raw-matrix entry point: rejects anything that is not special unitary.
inline LiftedRep lift(const SUIrrepLabel &label, const ComplexMatrix &u, double tol = 1e-10,
                      const LiftOptions &opt = {}) {
    require_square(u, "lift");
    const auto n = u.rows();
    if ((u.adjoint() * u - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() >= tol ||
        std::abs(u.determinant() - 1.0) >= tol)
        throw DomainError("lift: matrix is not special unitary");
    return lift(label, UnitaryElement(u, tol), opt);
}

inline cplx dfunction(const SUIrrepLabel &label, const GTPattern &r, const GTPattern &t, const UnitaryElement &u) {
    const auto irrep = irrep_for(label);
    const auto ri = irrep->index_of(r), ti = irrep->index_of(t);
    return lift(*irrep, u).matrix(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(ti));
}

inline nlohmann::json pattern_json(const GTPattern &p) { return nlohmann::json(p); }

/// One JSON object per line: {"irrep", "r", "t", "r_tag", "t_tag", "value": [re, im]}.
inline void dump_dfunctions(const LiftedRep &rep, std::ostream &os) {
    const auto irrep = irrep_for(rep.irrep);
    const auto &pats = irrep->patterns();
    for (std::size_t r = 0; r < pats.size(); ++r) {
        for (std::size_t t = 0; t < pats.size(); ++t) {
            const cplx v = rep.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t));
            nlohmann::ordered_json rec;
            rec["irrep"] = rep.irrep.row();
            rec["r"] = pats[r];
            rec["t"] = pats[t];
            rec["r_tag"] = pattern_tag(pats[r]);
            rec["t_tag"] = pattern_tag(pats[t]);
            rec["value"] = {v.real(), v.imag()};
            os << rec.dump() << '\n';
        }
    }
}

} // namespace immdfun
