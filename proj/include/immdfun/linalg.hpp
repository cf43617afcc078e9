#pragma once

// Complex matrices, Haar-random unitaries, submatrix selection and immanants.

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "symgroup.hpp"

namespace immdfun {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline void require_finite(const ComplexMatrix &m) {
    if (!m.allFinite())
        throw DomainError("matrix has non-finite entries");
}

inline void require_square(const ComplexMatrix &m, const char *who) {
    if (m.rows() != m.cols())
        throw DomainError(std::string(who) + ": matrix must be square");
}

/// A special-unitary group element given by its defining matrix.
///
/// Inputs that are unitary with det != 1 are rescaled by the principal m-th
/// root of det; `was_normalized()` reports whether that happened.
class UnitaryElement {
  public:
    static constexpr double default_tol = 1e-10;

    explicit UnitaryElement(ComplexMatrix m, double tol = default_tol) : matrix_(std::move(m)), tol_(tol) {
        require_square(matrix_, "UnitaryElement");
        require_finite(matrix_);
        const auto n = matrix_.rows();
        const double defect =
            (matrix_.adjoint() * matrix_ - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
        if (defect >= tol_)
            throw DomainError("UnitaryElement: not unitary (defect " + std::to_string(defect) + ")");
        const cplx det = matrix_.determinant();
        if (std::abs(det - 1.0) >= tol_) {
            matrix_ /= std::pow(det, 1.0 / static_cast<double>(n));
            normalized_ = true;
        }
    }

    const ComplexMatrix &matrix() const { return matrix_; }
    int m() const { return static_cast<int>(matrix_.rows()); }
    double unitarity_tol() const { return tol_; }
    bool was_normalized() const { return normalized_; }

    UnitaryElement operator*(const UnitaryElement &o) const { return UnitaryElement(matrix_ * o.matrix_, tol_); }

  private:
    ComplexMatrix matrix_;
    double tol_;
    bool normalized_ = false;
};

/// Rows (strictly increasing) and columns (distinct, any order), 1-based.
class SubmatrixSelector {
  public:
    SubmatrixSelector(std::vector<int> rows, std::vector<int> cols) : rows_(std::move(rows)), cols_(std::move(cols)) {
        if (rows_.empty() || rows_.size() != cols_.size())
            throw DomainError("selector: row and column index lists must be non-empty and of equal length");
        for (std::size_t i = 1; i < rows_.size(); ++i)
            if (rows_[i] <= rows_[i - 1])
                throw DomainError("selector: row indices must be strictly increasing");
        for (std::size_t i = 0; i < cols_.size(); ++i)
            for (std::size_t j = i + 1; j < cols_.size(); ++j)
                if (cols_[i] == cols_[j])
                    throw DomainError("selector: column indices must be distinct");
    }

    static SubmatrixSelector principal(std::vector<int> idx) {
        auto c = idx;
        return SubmatrixSelector(std::move(idx), std::move(c));
    }

    static SubmatrixSelector full(int m) {
        std::vector<int> idx(m);
        std::iota(idx.begin(), idx.end(), 1);
        return principal(std::move(idx));
    }

    const std::vector<int> &rows() const { return rows_; }
    const std::vector<int> &cols() const { return cols_; }
    int size() const { return static_cast<int>(rows_.size()); }
    bool is_principal() const { return rows_ == cols_; }

  private:
    std::vector<int> rows_;
    std::vector<int> cols_;
};

inline ComplexMatrix submatrix(const ComplexMatrix &m, const SubmatrixSelector &sel) {
    const int p = sel.size();
    ComplexMatrix out(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            const int r = sel.rows()[i], c = sel.cols()[j];
            if (r < 1 || r > m.rows() || c < 1 || c > m.cols())
                throw DomainError("submatrix: index out of range");
            out(i, j) = m(r - 1, c - 1);
        }
    }
    return out;
}

inline constexpr int default_immanant_cap = 9;

/// sum_sigma chi^{p}(sigma) prod_k M_{k, sigma(k)} by direct enumeration of S_n.
inline cplx immanant(const Partition &p, const ComplexMatrix &m, int cap = default_immanant_cap) {
    require_square(m, "immanant");
    const int n = static_cast<int>(m.rows());
    if (p.n() != n)
        throw DomainError("immanant: partition " + p.str() + " does not match matrix side " + std::to_string(n));
    if (n > cap)
        throw ResourceError("immanant: side " + std::to_string(n) + " exceeds the n! cap " + std::to_string(cap));

    const auto chi = character_row(p);
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<bool> seen(n);
    std::vector<int> lengths;
    lengths.reserve(n);

    // Fixed-size blocks summed in order keep the reduction deterministic and
    // limit the accumulated rounding of a long running sum.
    constexpr std::size_t block = 720;
    cplx total = 0.0, partial = 0.0;
    std::size_t in_block = 0;
    do {
        std::fill(seen.begin(), seen.end(), false);
        lengths.clear();
        for (int i = 0; i < n; ++i) {
            if (seen[i])
                continue;
            int len = 0;
            for (int j = i; !seen[j]; j = sigma[j]) {
                seen[j] = true;
                ++len;
            }
            lengths.push_back(len);
        }
        std::sort(lengths.rbegin(), lengths.rend());
        const long c = chi.at(Partition(lengths));
        if (c != 0) {
            cplx prod = 1.0;
            for (int k = 0; k < n; ++k)
                prod *= m(k, sigma[k]);
            partial += static_cast<double>(c) * prod;
        }
        if (++in_block == block) {
            total += partial;
            partial = 0.0;
            in_block = 0;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total + partial;
}

/// Ryser's formula with Gray-code column subsets.
inline cplx permanent_ryser(const ComplexMatrix &m) {
    require_square(m, "permanent_ryser");
    const int n = static_cast<int>(m.rows());
    if (n > 24)
        throw ResourceError("permanent_ryser: side exceeds 24");
    if (n == 0)
        return 1.0;
    std::vector<cplx> rowsum(n, 0.0);
    cplx total = 0.0;
    std::uint64_t gray_prev = 0;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t diff = gray ^ gray_prev;
        const int col = __builtin_ctzll(diff);
        const double sign = (gray & diff) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i)
            rowsum[i] += sign * m(i, col);
        gray_prev = gray;
        cplx prod = 1.0;
        for (int i = 0; i < n; ++i)
            prod *= rowsum[i];
        const int bits = __builtin_popcountll(gray);
        total += ((n - bits) % 2 ? -prod : prod);
    }
    return total;
}

/// LU with partial pivoting.
inline cplx determinant(const ComplexMatrix &m) {
    require_square(m, "determinant");
    if (m.rows() == 0)
        return 1.0;
    return m.partialPivLu().determinant();
}

/// Haar-distributed U(m) sample (QR of a complex Ginibre matrix with the
/// phases of R's diagonal absorbed), rescaled into SU(m).
inline UnitaryElement haar_random_unitary(int m, std::uint64_t seed) {
    if (m < 2)
        throw DomainError("haar_random_unitary: m must be at least 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix z(m, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i)
            z(i, j) = cplx(gauss(rng), gauss(rng)) / std::sqrt(2.0);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m, m);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < m; ++j) {
        const cplx d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    const cplx det = q.determinant();
    q /= std::pow(det, 1.0 / m);
    return UnitaryElement(std::move(q), 1e-12);
}

/// The SU(2) element with Euler angles (alpha, beta, gamma).
inline UnitaryElement su2_euler(double alpha, double beta, double gamma) {
    using namespace std::complex_literals;
    ComplexMatrix t(2, 2);
    t(0, 0) = std::exp(-0.5i * (alpha + gamma)) * std::cos(beta / 2);
    t(0, 1) = -std::exp(-0.5i * (alpha - gamma)) * std::sin(beta / 2);
    t(1, 0) = std::exp(0.5i * (alpha - gamma)) * std::sin(beta / 2);
    t(1, 1) = std::exp(0.5i * (alpha + gamma)) * std::cos(beta / 2);
    return UnitaryElement(std::move(t), 1e-12);
}

} // namespace immdfun
