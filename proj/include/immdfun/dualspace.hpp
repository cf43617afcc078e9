#pragma once

// The N-fold tensor power of the defining representation of SU(m): basis
// states, the S_N action, immanant projectors, collective u(m) operators and
// chain-adapted (Gelfand-Tsetlin) vectors of each irrep copy.  Coefficient
// matrices built here express an immanant of a submatrix as a linear
// combination of D-functions without reference to any group element.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "linalg.hpp"
#include "report.hpp"
#include "sunrep.hpp"
#include "symgroup.hpp"

namespace immdfun {

inline constexpr std::size_t max_tensor_dim = 1'000'000;

inline std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i)
        r *= base;
    return r;
}

/// Vector in (C^m)^{tensor N}. Basis index of mode tuple (k_1..k_N) is
/// sum_s (k_s - 1) m^{N-s}, so slot 1 is the most significant digit.
class TensorState {
  public:
    TensorState(int m, int n) : m_(m), n_(n) {
        if (m < 1 || n < 1)
            throw DomainError("TensorState: m and N must be positive");
        const std::size_t d = ipow(static_cast<std::size_t>(m), n);
        if (d > max_tensor_dim)
            throw ResourceError("TensorState: m^N = " + std::to_string(d) + " exceeds cap " +
                                std::to_string(max_tensor_dim));
        amp_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d));
    }

    int m() const { return m_; }
    int n() const { return n_; }
    Eigen::Index size() const { return amp_.size(); }
    Eigen::VectorXcd &amplitudes() { return amp_; }
    const Eigen::VectorXcd &amplitudes() const { return amp_; }
    double norm() const { return amp_.norm(); }

    Eigen::Index index_of(const std::vector<int> &modes) const {
        if (static_cast<int>(modes.size()) != n_)
            throw DomainError("TensorState: mode tuple has wrong length");
        Eigen::Index idx = 0;
        for (int k : modes) {
            if (k < 1 || k > m_)
                throw DomainError("TensorState: mode " + std::to_string(k) + " out of range 1.." + std::to_string(m_));
            idx = idx * m_ + (k - 1);
        }
        return idx;
    }

    std::vector<int> modes_of(Eigen::Index idx) const {
        std::vector<int> modes(n_);
        for (int s = n_ - 1; s >= 0; --s) {
            modes[s] = static_cast<int>(idx % m_) + 1;
            idx /= m_;
        }
        return modes;
    }

    /// Index stride of slot s (1-based).
    Eigen::Index stride(int s) const { return static_cast<Eigen::Index>(ipow(static_cast<std::size_t>(m_), n_ - s)); }

    cplx dot(const TensorState &o) const { return amp_.dot(o.amp_); }

  private:
    int m_, n_;
    Eigen::VectorXcd amp_;
};

inline WeightVector occupation_of(int m, const std::vector<int> &modes) {
    WeightVector w{std::vector<int>(m, 0)};
    for (int k : modes) {
        if (k < 1 || k > m)
            throw DomainError("mode " + std::to_string(k) + " out of range 1.." + std::to_string(m));
        ++w.occupation[k - 1];
    }
    return w;
}

inline TensorState basis_state(int m, const std::vector<int> &modes) {
    TensorState v(m, static_cast<int>(modes.size()));
    v.amplitudes()(v.index_of(modes)) = 1.0;
    return v;
}

/// P(s): the mode in slot i moves to slot s(i), so P(a)P(b) = P(a o b).
inline TensorState apply_permutation(const Permutation &s, const TensorState &v) {
    if (s.size() != v.n())
        throw DomainError("apply_permutation: permutation degree differs from factor count");
    TensorState out(v.m(), v.n());
    const int n = v.n();
    std::vector<int> moved(n);
    for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
        const cplx a = v.amplitudes()(idx);
        if (a == 0.0)
            continue;
        const auto modes = v.modes_of(idx);
        for (int i = 1; i <= n; ++i)
            moved[s(i) - 1] = modes[i - 1];
        out.amplitudes()(out.index_of(moved)) += a;
    }
    return out;
}

/// sum_sigma chi^{p}(sigma) P(sigma) v, unnormalized.
inline TensorState immanant_projector(const Partition &p, const TensorState &v) {
    if (p.n() != v.n())
        throw DomainError("immanant_projector: partition size differs from factor count");
    const auto chi = character_row(p);
    TensorState out(v.m(), v.n());
    for (const auto &s : all_permutations(v.n())) {
        const long c = chi.at(s.cycle_type());
        if (c != 0)
            out.amplitudes() += static_cast<double>(c) * apply_permutation(s, v).amplitudes();
    }
    return out;
}

/// C_ij = sum over tensor factors of the one-body unit |i><j|, applied sparsely.
class CollectiveOperator {
  public:
    CollectiveOperator(int m, int n, int i, int j) : m_(m), n_(n), i_(i), j_(j) {
        if (i < 1 || j < 1 || i > m || j > m)
            throw DomainError("collective_operator: mode index out of range");
    }

    TensorState operator()(const TensorState &v) const {
        if (v.m() != m_ || v.n() != n_)
            throw DomainError("collective_operator: state has the wrong shape");
        TensorState out(m_, n_);
        const auto &in = v.amplitudes();
        auto &res = out.amplitudes();
        for (Eigen::Index idx = 0; idx < in.size(); ++idx) {
            const cplx a = in(idx);
            if (a == 0.0)
                continue;
            Eigen::Index rest = idx;
            for (int s = n_; s >= 1; --s) {
                const int mode = static_cast<int>(rest % m_) + 1;
                rest /= m_;
                if (mode == j_)
                    res(idx + (i_ - j_) * v.stride(s)) += a;
            }
        }
        return out;
    }

    int i() const { return i_; }
    int j() const { return j_; }

  private:
    int m_, n_, i_, j_;
};

inline CollectiveOperator collective_operator(int m, int n, int i, int j) { return CollectiveOperator(m, n, i, j); }

/// U^{tensor N} v, one tensor factor at a time.
inline TensorState apply_tensor_power(const ComplexMatrix &u, const TensorState &v) {
    if (u.rows() != v.m() || u.cols() != v.m())
        throw DomainError("apply_tensor_power: matrix side differs from m");
    const int m = v.m();
    Eigen::VectorXcd cur = v.amplitudes();
    Eigen::VectorXcd next(cur.size());
    for (int s = 1; s <= v.n(); ++s) {
        const Eigen::Index stride = v.stride(s);
        const Eigen::Index block = stride * m;
        next.setZero();
        for (Eigen::Index base = 0; base < cur.size(); base += block)
            for (Eigen::Index low = 0; low < stride; ++low)
                for (int b = 0; b < m; ++b) {
                    const cplx x = cur(base + b * stride + low);
                    if (x == 0.0)
                        continue;
                    for (int a = 0; a < m; ++a)
                        next(base + a * stride + low) += u(a, b) * x;
                }
        std::swap(cur, next);
    }
    TensorState out(v.m(), v.n());
    out.amplitudes() = std::move(cur);
    return out;
}

struct ChainVector {
    GTPattern pattern;
    std::size_t pattern_index; // index into gt_basis(irrep)
    int copy;                  // multiplicity index alpha
    TensorState state;
};

/// Orthonormal chain-adapted vectors of one irrep at one weight, one per
/// (pattern, copy), pattern-major.
struct ChainSubspace {
    SUIrrepLabel irrep; // u(m) row with N boxes
    WeightVector weight;
    int multiplicity = 0;
    std::vector<GTPattern> patterns;
    std::vector<ChainVector> vectors;

    const TensorState &at(std::size_t pattern_pos, int copy) const {
        return vectors[pattern_pos * static_cast<std::size_t>(multiplicity) + static_cast<std::size_t>(copy)].state;
    }
    bool empty() const { return vectors.empty(); }
};

/// Embeddings of every copy of one irrep inside the N-fold tensor power.
///
/// The highest-weight vectors of the copies span the joint kernel of the
/// simple raising operators; any orthonormal basis of that kernel fixes the
/// copy index.  Every other chain vector is the image of a GT basis vector
/// under the intertwiner that sends the irrep's highest-weight state to the
/// copy's highest-weight vector, evaluated through words of simple lowering
/// operators.  Chain vectors therefore carry exactly the GT phases of sunrep.
class IrrepEmbedding {
  public:
    IrrepEmbedding(int m, int n, const SUIrrepLabel &irrep) : m_(m), n_(n) {
        if (irrep.m() != m)
            throw DomainError("IrrepEmbedding: irrep is for a different m");
        const auto norm = irrep.normalized();
        const int extra = n - norm.total();
        if (extra >= 0 && extra % m == 0) {
            auto row = norm.row();
            for (int &x : row)
                x += extra / m;
            label_ = SUIrrepLabel(row);
            present_ = true;
        } else {
            label_ = irrep;
            return;
        }
        irrep_ = irrep_for(label_);
        std::vector<int> parts;
        for (int x : label_.row())
            if (x > 0)
                parts.push_back(x);
        partition_ = Partition(parts);
        find_highest_weight_vectors();
    }

    bool present() const { return present_; }
    const SUIrrepLabel &label() const { return label_; }
    const Irrep &irrep() const { return *irrep_; }
    int multiplicity() const { return static_cast<int>(highest_.size()); }
    const std::vector<TensorState> &highest_weight_vectors() const { return highest_; }

    ChainSubspace subspace(const WeightVector &w) const {
        ChainSubspace out;
        out.irrep = label_;
        out.weight = w;
        if (!present_ || static_cast<int>(w.occupation.size()) != m_ || w.total() != n_)
            return out;
        const auto idx = irrep_->weight_indices(w);
        if (idx.empty())
            return out;
        out.multiplicity = multiplicity();
        const auto &[basis, images] = weight_block(w);
        for (std::size_t t = 0; t < idx.size(); ++t) {
            out.patterns.push_back(irrep_->patterns()[idx[t]]);
            for (int a = 0; a < multiplicity(); ++a) {
                TensorState v(m_, n_);
                v.amplitudes() = images[a] * basis.row(static_cast<Eigen::Index>(idx[t])).transpose().cast<cplx>();
                out.vectors.push_back({irrep_->patterns()[idx[t]], idx[t], a, std::move(v)});
            }
        }
        return out;
    }

  private:
    struct Block {
        Eigen::MatrixXd basis;                 // irrep coordinates, orthonormal columns
        std::vector<Eigen::MatrixXcd> images;  // per copy: tensor images of the columns
    };

    void find_highest_weight_vectors() {
        // Tuples with occupation equal to the highest weight.
        std::vector<int> modes;
        for (int k = 1; k <= m_; ++k)
            modes.insert(modes.end(), label_.row()[k - 1], k);
        std::vector<std::vector<int>> tuples;
        do {
            tuples.push_back(modes);
        } while (std::next_permutation(modes.begin(), modes.end()));

        const TensorState probe(m_, n_);
        const auto d = static_cast<Eigen::Index>(tuples.size());
        // Gram matrix of sum_k C_{k,k+1}^dagger C_{k,k+1} on the block.
        Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
        for (int k = 1; k < m_; ++k) {
            std::unordered_map<Eigen::Index, std::vector<Eigen::Index>> hits;
            for (Eigen::Index a = 0; a < d; ++a) {
                auto t = tuples[a];
                for (int s = 0; s < n_; ++s) {
                    if (t[s] != k + 1)
                        continue;
                    t[s] = k;
                    hits[probe.index_of(t)].push_back(a);
                    t[s] = k + 1;
                }
            }
            for (const auto &[img, from] : hits)
                for (auto a : from)
                    for (auto b : from)
                        gram(a, b) += 1.0;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        for (Eigen::Index c = 0; c < d; ++c) {
            if (es.eigenvalues()(c) > 1e-8 * scale)
                continue;
            TensorState v(m_, n_);
            for (Eigen::Index a = 0; a < d; ++a)
                v.amplitudes()(v.index_of(tuples[a])) = es.eigenvectors()(a, c);
            highest_.push_back(std::move(v));
        }
        if (highest_.size() != dim_sym(partition_))
            throw std::logic_error("IrrepEmbedding: found " + std::to_string(highest_.size()) +
                                   " highest-weight vectors for " + label_.str() + ", expected " +
                                   std::to_string(dim_sym(partition_)));
    }

    // Weights on some lowering path from the highest weight down to `target`.
    static bool dominates(const std::vector<int> &u, const std::vector<int> &target) {
        int su = 0, st = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            su += u[i];
            st += target[i];
            if (su < st)
                return false;
        }
        return true;
    }

    const Block &weight_block(const WeightVector &target) const {
        std::lock_guard lock(mu_);
        if (auto it = blocks_.find(target.occupation); it != blocks_.end())
            return it->second;

        const auto dim = static_cast<Eigen::Index>(irrep_->dim());
        const auto hw_occ = label_.row();
        if (blocks_.find(hw_occ) == blocks_.end()) {
            Block top;
            top.basis = Eigen::MatrixXd::Zero(dim, 1);
            top.basis(static_cast<Eigen::Index>(irrep_->weight_indices({hw_occ}).at(0)), 0) = 1.0;
            for (const auto &h : highest_)
                top.images.push_back(h.amplitudes());
            blocks_.emplace(hw_occ, std::move(top));
        }

        std::vector<std::vector<int>> layer{hw_occ};
        while (!layer.empty()) {
            std::vector<std::vector<int>> next_layer;
            for (const auto &u : layer) {
                for (int l = 1; l < m_; ++l) {
                    if (u[l - 1] == 0)
                        continue;
                    auto v = u;
                    --v[l - 1];
                    ++v[l];
                    if (!dominates(v, target.occupation))
                        continue;
                    if (std::find(next_layer.begin(), next_layer.end(), v) == next_layer.end())
                        next_layer.push_back(v);
                }
            }
            for (const auto &v : next_layer)
                if (blocks_.find(v) == blocks_.end())
                    build_block(v);
            layer = std::move(next_layer);
        }
        return blocks_.at(target.occupation);
    }

    // Orthonormal basis of weight space `w` from simple lowerings of the
    // already-built blocks one step above, with the matching tensor images.
    void build_block(const std::vector<int> &w) const {
        Block blk;
        const auto want = irrep_->weight_indices({w}).size();
        const auto dim = static_cast<Eigen::Index>(irrep_->dim());
        const int copies = multiplicity();
        blk.basis.resize(dim, 0);
        blk.images.assign(copies, Eigen::MatrixXcd(static_cast<Eigen::Index>(ipow(m_, n_)), 0));
        if (want == 0) {
            blocks_.emplace(w, std::move(blk));
            return;
        }
        for (int l = 1; l < m_ && static_cast<std::size_t>(blk.basis.cols()) < want; ++l) {
            auto above = w;
            ++above[l - 1];
            --above[l];
            if (above[l] < 0)
                continue;
            auto it = blocks_.find(above);
            if (it == blocks_.end() || it->second.basis.cols() == 0)
                continue;
            const auto &lower = irrep_->generator(l + 1, l);
            const CollectiveOperator op(m_, n_, l + 1, l);
            for (Eigen::Index j = 0; j < it->second.basis.cols() && static_cast<std::size_t>(blk.basis.cols()) < want;
                 ++j) {
                Eigen::VectorXd cand = lower * it->second.basis.col(j);
                const double cand_norm = cand.norm();
                if (cand_norm < 1e-12)
                    continue;
                std::vector<Eigen::VectorXcd> imgs;
                for (int a = 0; a < copies; ++a) {
                    TensorState src(m_, n_);
                    src.amplitudes() = it->second.images[a].col(j);
                    imgs.push_back(op(src).amplitudes());
                }
                // Two rounds of Gram-Schmidt against the accepted columns.
                for (int pass = 0; pass < 2; ++pass) {
                    for (Eigen::Index q = 0; q < blk.basis.cols(); ++q) {
                        const double c = blk.basis.col(q).dot(cand);
                        cand -= c * blk.basis.col(q);
                        for (int a = 0; a < copies; ++a)
                            imgs[a] -= c * blk.images[a].col(q);
                    }
                }
                const double r = cand.norm();
                if (r < 1e-8 * cand_norm)
                    continue;
                const auto col = blk.basis.cols();
                blk.basis.conservativeResize(Eigen::NoChange, col + 1);
                blk.basis.col(col) = cand / r;
                for (int a = 0; a < copies; ++a) {
                    blk.images[a].conservativeResize(Eigen::NoChange, col + 1);
                    blk.images[a].col(col) = imgs[a] / r;
                }
            }
        }
        if (static_cast<std::size_t>(blk.basis.cols()) != want)
            throw std::logic_error("IrrepEmbedding: lowering words do not span a weight space");
        blocks_.emplace(w, std::move(blk));
    }

    int m_, n_;
    SUIrrepLabel label_;
    bool present_ = false;
    std::shared_ptr<const Irrep> irrep_;
    Partition partition_;
    std::vector<TensorState> highest_;
    mutable std::mutex mu_;
    mutable std::map<std::vector<int>, Block> blocks_;
};

/// Shared embedding cache keyed by (m, N, row).
inline std::shared_ptr<const IrrepEmbedding> embedding_for(int m, int n, const SUIrrepLabel &irrep) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, std::vector<int>>, std::shared_ptr<const IrrepEmbedding>> cache;
    std::lock_guard lock(mu);
    auto &slot = cache[{m, n, irrep.normalized().row()}];
    if (!slot)
        slot = std::make_shared<const IrrepEmbedding>(m, n, irrep);
    return slot;
}

/// Chain-adapted vectors of `irrep` at weight `w` in the N-fold power; empty
/// when the irrep or weight does not occur.
inline ChainSubspace chain_subspace(int m, int n, const SUIrrepLabel &irrep, const WeightVector &w) {
    return embedding_for(m, n, irrep)->subspace(w);
}

/// Mixes multiplicity copies: psi'_b = sum_a v(a, b) psi_a.
inline ChainSubspace remix_copies(const ChainSubspace &sub, const ComplexMatrix &v) {
    ChainSubspace out = sub;
    for (std::size_t t = 0; t < sub.patterns.size(); ++t)
        for (int b = 0; b < sub.multiplicity; ++b) {
            auto &dst = out.vectors[t * sub.multiplicity + b].state.amplitudes();
            dst.setZero();
            for (int a = 0; a < sub.multiplicity; ++a)
                dst += v(a, b) * sub.at(t, a).amplitudes();
        }
    return out;
}

/// M with Imm^{p}(U[k, q]) = sum_rs M_rs D^{(p)}_rs(U); rows follow the
/// weight of k, columns the weight of q.
struct CoefficientMatrix {
    Partition partition;
    SUIrrepLabel irrep;
    WeightVector left_weight, right_weight;
    std::vector<GTPattern> left_patterns, right_patterns;
    ComplexMatrix entries;
};

/// sigma with P(sigma)|Phi_sorted(q)> = |Phi_q>; among equal modes the
/// matching is order preserving, which gives the shortest such permutation.
inline Permutation sorting_permutation(const std::vector<int> &q) {
    const int n = static_cast<int>(q.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return q[a] < q[b]; });
    // Sorted slot i holds q[order[i]], which must land in slot order[i].
    std::vector<int> images(n);
    for (int i = 0; i < n; ++i)
        images[i] = order[i] + 1;
    return Permutation(images);
}

inline CoefficientMatrix coefficient_matrix_from(const Partition &p, const std::vector<int> &k,
                                                 const std::vector<int> &q, const ChainSubspace &left,
                                                 const ChainSubspace &right) {
    const int m = static_cast<int>(left.weight.occupation.size());
    CoefficientMatrix out{p, left.irrep, left.weight, right.weight, left.patterns, right.patterns, {}};
    out.entries = ComplexMatrix::Zero(static_cast<Eigen::Index>(left.patterns.size()),
                                      static_cast<Eigen::Index>(right.patterns.size()));
    if (left.empty() || right.empty())
        return out;

    const TensorState proj_k = immanant_projector(p, basis_state(m, k));
    auto sorted_q = q;
    std::sort(sorted_q.begin(), sorted_q.end());
    const TensorState phi_q = apply_permutation(sorting_permutation(q), basis_state(m, sorted_q));
    const Eigen::Index q_idx = phi_q.index_of(q);

    const int copies = left.multiplicity;
    for (std::size_t r = 0; r < left.patterns.size(); ++r)
        for (std::size_t s = 0; s < right.patterns.size(); ++s) {
            cplx acc = 0.0;
            for (int a = 0; a < copies; ++a) {
                // <Phi_k| Pi |psi_a(r)> <psi_a(s)|Phi_q>; Pi is Hermitian.
                const cplx left_overlap = proj_k.dot(left.at(r, a));
                const cplx right_overlap = std::conj(right.at(s, a).amplitudes()(q_idx)) * phi_q.amplitudes()(q_idx);
                acc += left_overlap * right_overlap;
            }
            out.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) = acc;
        }
    return out;
}

/// Coefficient matrix of the immanant of rows k, columns q (1-based modes).
inline CoefficientMatrix coefficient_matrix(int m, const Partition &p, const std::vector<int> &k,
                                            const std::vector<int> &q) {
    const int n = p.n();
    if (static_cast<int>(k.size()) != n || static_cast<int>(q.size()) != n)
        throw DomainError("coefficient_matrix: selector length differs from partition size " + std::to_string(n));
    const auto wk = occupation_of(m, k), wq = occupation_of(m, q);
    if (static_cast<int>(p.length()) > m) {
        CoefficientMatrix empty{p, SUIrrepLabel(std::vector<int>(m, 0)), wk, wq, {}, {}, ComplexMatrix(0, 0)};
        return empty;
    }
    const auto emb = embedding_for(m, n, SUIrrepLabel::from_partition(p, m));
    return coefficient_matrix_from(p, k, q, emb->subspace(wk), emb->subspace(wq));
}

/// <Phi_k| U^{tensor N} Pi^{p} |Phi_q>, equal to Imm^{p} of the (k, q) submatrix.
inline cplx immanant_via_duality(const Partition &p, const std::vector<int> &k, const std::vector<int> &q,
                                 const ComplexMatrix &u) {
    const int m = static_cast<int>(u.rows());
    const int n = p.n();
    if (m > 6 || n > 6)
        throw ResourceError("immanant_via_duality: limited to m <= 6 and N <= 6");
    if (static_cast<int>(k.size()) != n || static_cast<int>(q.size()) != n)
        throw DomainError("immanant_via_duality: selector length differs from partition size");
    const TensorState projected = immanant_projector(p, basis_state(m, q));
    const TensorState moved = apply_tensor_power(u, projected);
    return moved.amplitudes()(moved.index_of(k));
}

/// sum_rs M_rs D_rs(U) with D taken from the lifted irrep.
inline cplx contract_with_dfunctions(const CoefficientMatrix &cm, const UnitaryElement &u) {
    if (cm.entries.size() == 0)
        return 0.0;
    const auto irrep = irrep_for(cm.irrep);
    const auto t = lift(*irrep, u).matrix;
    cplx acc = 0.0;
    for (std::size_t r = 0; r < cm.left_patterns.size(); ++r)
        for (std::size_t s = 0; s < cm.right_patterns.size(); ++s) {
            const auto ri = static_cast<Eigen::Index>(irrep->index_of(cm.left_patterns[r]));
            const auto si = static_cast<Eigen::Index>(irrep->index_of(cm.right_patterns[s]));
            acc += cm.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) * t(ri, si);
        }
    return acc;
}

/// sum of D_rr(U) over the patterns of `irrep` with occupation w.
inline cplx diagonal_dsum(const SUIrrepLabel &irrep, const WeightVector &w, const UnitaryElement &u) {
    const auto rep = irrep_for(irrep);
    const auto idx = rep->weight_indices(w);
    if (idx.empty())
        return 0.0;
    const auto t = lift(*rep, u).matrix;
    cplx acc = 0.0;
    for (auto i : idx)
        acc += t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    return acc;
}

/// {3}{1} = {3,1} + {4} for a 4x4 element, as immanants and as D-function sums.
inline VerificationReport verify_littlewood(const UnitaryElement &u, double tol = 1e-9, std::uint64_t seed = 0) {
    if (u.m() != 4)
        throw DomainError("verify_littlewood: needs a 4x4 element");
    const auto &t = u.matrix();
    const std::vector<std::pair<std::vector<int>, int>> pairs{{{1, 2, 3}, 4}, {{1, 2, 4}, 3}, {{1, 3, 4}, 2}, {{2, 3, 4}, 1}};

    cplx lhs = 0.0, lhs_d = 0.0;
    const SUIrrepLabel sym3({3, 0, 0, 0}), fund({1, 0, 0, 0});
    for (const auto &[triple, single] : pairs) {
        const cplx per3 = immanant({3}, submatrix(t, SubmatrixSelector::principal(triple)));
        lhs += per3 * t(single - 1, single - 1);
        lhs_d += diagonal_dsum(sym3, occupation_of(4, triple), u) * diagonal_dsum(fund, occupation_of(4, {single}), u);
    }
    const cplx rhs = immanant({3, 1}, t) + immanant({4}, t);
    const WeightVector zero{{1, 1, 1, 1}};
    const cplx rhs_d =
        diagonal_dsum(SUIrrepLabel({3, 1, 0, 0}), zero, u) + diagonal_dsum(SUIrrepLabel({4, 0, 0, 0}), zero, u);

    VerificationReport rep;
    rep.suite = "littlewood";
    rep.m = 4;
    rep.partition = {3, 1};
    rep.seed = seed;
    const double r_imm = std::abs(lhs - rhs);
    const double r_dlhs = std::abs(lhs_d - lhs);
    const double r_drhs = std::abs(rhs_d - rhs);
    rep.residual = std::max({r_imm, r_dlhs, r_drhs});
    rep.pass = rep.residual < tol;
    rep.details["lhs"] = {lhs.real(), lhs.imag()};
    rep.details["rhs"] = {rhs.real(), rhs.imag()};
    rep.details["immanant_residual"] = r_imm;
    rep.details["dfunction_lhs_residual"] = r_dlhs;
    rep.details["dfunction_rhs_residual"] = r_drhs;
    return rep;
}

struct ConjectureCounts {
    int unit = 0;          // |e - 1| < tol
    int zero = 0;          // |e| < tol
    int other = 0;         // anything else
    int modulus_unit = 0;  // ||e| - 1| < tol
    int modulus_other = 0; // neither |e| ~ 0 nor |e| ~ 1
};

inline ConjectureCounts count_entries(const ComplexMatrix &e, double tol = 1e-8) {
    ConjectureCounts c;
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) {
            const cplx x = e(i, j);
            const double a = std::abs(x);
            if (std::abs(x - 1.0) < tol)
                ++c.unit;
            else if (a < tol)
                ++c.zero;
            else
                ++c.other;
            if (std::abs(a - 1.0) < tol)
                ++c.modulus_unit;
            else if (a >= tol)
                ++c.modulus_other;
        }
    return c;
}

/// Evidence for one (k, q) pair: the coefficient matrix should hold exactly
/// dim{p} unit entries and zeros elsewhere.
inline VerificationReport conjecture_report(int m, const Partition &p, const std::vector<int> &k,
                                            const std::vector<int> &q, double tol = 1e-8) {
    const auto cm = coefficient_matrix(m, p, k, q);
    const auto counts = count_entries(cm.entries, tol);
    const int expected = static_cast<int>(dim_sym(p));

    VerificationReport rep;
    rep.suite = "conjecture";
    rep.m = m;
    rep.partition = p.parts();
    rep.selector_rows = k;
    rep.selector_cols = q;
    rep.pass = counts.unit == expected && counts.other == 0;
    rep.residual = static_cast<double>(std::abs(counts.unit - expected) + counts.other);
    rep.details["irrep"] = cm.irrep.row();
    rep.details["expected_units"] = expected;
    rep.details["unit_entries"] = counts.unit;
    rep.details["zero_entries"] = counts.zero;
    rep.details["other_entries"] = counts.other;
    rep.details["modulus_unit_entries"] = counts.modulus_unit;
    rep.details["modulus_other_entries"] = counts.modulus_other;
    rep.details["modulus_pass"] = counts.modulus_unit == expected && counts.modulus_other == 0;
    auto nonzero = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < cm.entries.rows(); ++r)
        for (Eigen::Index s = 0; s < cm.entries.cols(); ++s) {
            const cplx x = cm.entries(r, s);
            if (std::abs(x) < tol)
                continue;
            nlohmann::ordered_json e;
            e["left"] = pattern_tag(cm.left_patterns[r]);
            e["right"] = pattern_tag(cm.right_patterns[s]);
            e["value"] = {x.real(), x.imag()};
            nonzero.push_back(e);
        }
    rep.details["nonzero"] = nonzero;
    return rep;
}

namespace detail {

inline void subsets_rec(int m, int size, int start, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
    if (static_cast<int>(cur.size()) == size) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= m; ++i) {
        cur.push_back(i);
        subsets_rec(m, size, i + 1, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

/// Increasing index tuples of the given size from 1..m, lexicographic.
inline std::vector<std::vector<int>> index_subsets(int m, int size) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    detail::subsets_rec(m, size, 1, cur, out);
    return out;
}

/// Scans every (k, q) pair of increasing index tuples of size |p|; with
/// `all_selectors` false the principal pairs (k == q) are skipped.
inline std::vector<VerificationReport> conjecture_scan(int m, const Partition &p, bool all_selectors = true,
                                                       double tol = 1e-8) {
    std::vector<VerificationReport> out;
    const auto subsets = index_subsets(m, p.n());
    for (const auto &k : subsets)
        for (const auto &q : subsets) {
            if (!all_selectors && k == q)
                continue;
            out.push_back(conjecture_report(m, p, k, q, tol));
        }
    return out;
}

} // namespace immdfun
