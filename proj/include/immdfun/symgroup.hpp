#pragma once

// Symmetric group S_n: partitions, cycle types, characters (Murnaghan-Nakayama),
// hook-length dimensions and Young's orthogonal form.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace immdfun {

/// Weakly decreasing tuple of positive integers.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1)
                throw DomainError("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw DomainError("partition parts must be weakly decreasing");
        }
        if (parts_.empty())
            throw DomainError("partition must have at least one part");
    }
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int> &parts() const { return parts_; }
    int n() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    std::size_t length() const { return parts_.size(); }
    int operator[](std::size_t i) const { return parts_[i]; }

    /// Multiplicity of part size j.
    int multiplicity(int j) const { return static_cast<int>(std::count(parts_.begin(), parts_.end(), j)); }

    std::string str() const {
        std::ostringstream os;
        os << '{';
        for (std::size_t i = 0; i < parts_.size(); ++i)
            os << (i ? "," : "") << parts_[i];
        os << '}';
        return os.str();
    }

    friend bool operator==(const Partition &, const Partition &) = default;
    friend auto operator<=>(const Partition &a, const Partition &b) { return a.parts_ <=> b.parts_; }

  private:
    std::vector<int> parts_;
};

/// Bijection on {1..n} in one-line notation: images()[i-1] = s(i).
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            if (v < 1 || v > static_cast<int>(images_.size()) || seen[v - 1])
                throw DomainError("not a permutation in one-line notation");
            seen[v - 1] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 1);
        return Permutation(std::move(im));
    }

    /// The adjacent transposition (i, i+1), 1 <= i < n.
    static Permutation adjacent(int n, int i) {
        auto p = identity(n);
        std::swap(p.images_[i - 1], p.images_[i]);
        return p;
    }

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[i - 1]; }
    const std::vector<int> &images() const { return images_; }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i)
            inv[images_[i] - 1] = static_cast<int>(i) + 1;
        return Permutation(std::move(inv));
    }

    /// Number of inversions (Coxeter length).
    int length() const {
        int inv = 0;
        for (std::size_t i = 0; i < images_.size(); ++i)
            for (std::size_t j = i + 1; j < images_.size(); ++j)
                inv += images_[i] > images_[j];
        return inv;
    }

    Partition cycle_type() const {
        std::vector<bool> seen(images_.size(), false);
        std::vector<int> lengths;
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (seen[i])
                continue;
            int len = 0;
            for (std::size_t j = i; !seen[j]; j = images_[j] - 1) {
                seen[j] = true;
                ++len;
            }
            lengths.push_back(len);
        }
        std::sort(lengths.rbegin(), lengths.rend());
        return Partition(std::move(lengths));
    }

    /// Reduced word (i_1, ..., i_k) with *this = s_{i_1} o s_{i_2} o ... o s_{i_k}.
    std::vector<int> reduced_word() const {
        // Bubble sort: w o s_j swaps one-line positions j, j+1.
        std::vector<int> w = images_;
        std::vector<int> applied;
        bool swapped = true;
        while (swapped) {
            swapped = false;
            for (std::size_t j = 0; j + 1 < w.size(); ++j) {
                if (w[j] > w[j + 1]) {
                    std::swap(w[j], w[j + 1]);
                    applied.push_back(static_cast<int>(j) + 1);
                    swapped = true;
                }
            }
        }
        std::reverse(applied.begin(), applied.end());
        return applied;
    }

    friend bool operator==(const Permutation &, const Permutation &) = default;

  private:
    std::vector<int> images_;
};

/// (a o b)(i) = a(b(i)).
inline Permutation compose(const Permutation &a, const Permutation &b) {
    if (a.size() != b.size())
        throw DomainError("compose: permutations of different degree");
    std::vector<int> im(a.size());
    for (int i = 1; i <= a.size(); ++i)
        im[i - 1] = a(b(i));
    return Permutation(std::move(im));
}

/// All of S_n in lexicographic order of one-line notation.
inline std::vector<Permutation> all_permutations(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    std::vector<Permutation> out;
    do {
        out.emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i)
        f *= static_cast<std::uint64_t>(i);
    return f;
}

namespace detail {

inline void partitions_rec(int remaining, int max_part, std::vector<int> &cur, std::vector<Partition> &out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(remaining - p, p, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

/// All partitions of n in reverse lexicographic order ({n} first, {1^n} last).
inline std::vector<Partition> partitions_of(int n) {
    if (n < 1)
        throw DomainError("partitions_of: n must be positive");
    std::vector<Partition> out;
    std::vector<int> cur;
    detail::partitions_rec(n, n, cur, out);
    return out;
}

/// Hook-length formula.
inline std::uint64_t dim_sym(const Partition &p) {
    const auto &rows = p.parts();
    std::uint64_t num = factorial(p.n());
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int j = 0; j < rows[i]; ++j) {
            int arm = rows[i] - j - 1;
            int leg = 0;
            for (std::size_t k = i + 1; k < rows.size() && rows[k] > j; ++k)
                ++leg;
            den *= static_cast<std::uint64_t>(arm + leg + 1);
        }
    }
    return num / den;
}

/// n! / prod_j (j^{m_j} m_j!)
inline std::uint64_t class_size(const Partition &cls) {
    std::uint64_t den = 1;
    for (int j = 1; j <= cls.n(); ++j) {
        int mj = cls.multiplicity(j);
        for (int r = 0; r < mj; ++r)
            den *= static_cast<std::uint64_t>(j);
        den *= factorial(mj);
    }
    return factorial(cls.n()) / den;
}

namespace detail {

// Murnaghan-Nakayama on beta-sets: removing a rim hook of length r moves one
// bead from b to b - r; the sign counts beads strictly between.
inline long mn_character(std::vector<int> beta, const std::vector<int> &cls, std::size_t next,
                         std::map<std::pair<std::vector<int>, std::size_t>, long> &memo) {
    if (next == cls.size())
        return 1;
    auto key = std::make_pair(beta, next);
    if (auto it = memo.find(key); it != memo.end())
        return it->second;
    const int r = cls[next];
    long total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        const int b = beta[i];
        const int target = b - r;
        if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end())
            continue;
        int between = 0;
        for (int x : beta)
            between += (x > target && x < b);
        auto moved = beta;
        moved[i] = target;
        std::sort(moved.rbegin(), moved.rend());
        long sub = mn_character(std::move(moved), cls, next + 1, memo);
        total += (between % 2 ? -sub : sub);
    }
    memo.emplace(std::move(key), total);
    return total;
}

} // namespace detail

/// Irreducible character chi^{p} on the conjugacy class with cycle type `cls`.
inline long character(const Partition &p, const Partition &cls) {
    if (p.n() != cls.n())
        throw DomainError("character: partition " + p.str() + " and class " + cls.str() +
                          " have different sizes");
    const auto &rows = p.parts();
    const int len = static_cast<int>(rows.size());
    std::vector<int> beta(len);
    for (int i = 0; i < len; ++i)
        beta[i] = rows[i] + (len - 1 - i);
    std::map<std::pair<std::vector<int>, std::size_t>, long> memo;
    return detail::mn_character(std::move(beta), cls.parts(), 0, memo);
}

/// Character table row for p, keyed by class.
inline std::map<Partition, long> character_row(const Partition &p) {
    std::map<Partition, long> row;
    for (const auto &cls : partitions_of(p.n()))
        row.emplace(cls, character(p, cls));
    return row;
}

/// A standard Young tableau stored as the row (0-based) of each letter 1..n.
struct StandardTableau {
    std::vector<int> row_of;
    std::vector<int> col_of;

    int content(int letter) const { return col_of[letter - 1] - row_of[letter - 1]; }
};

/// Standard tableaux of shape p in last-letter order: compare the row of n,
/// then of n-1, ...; the tableau whose first differing letter sits in the
/// upper (smaller index) row comes first.
inline std::vector<StandardTableau> standard_tableaux(const Partition &p) {
    const int n = p.n();
    std::vector<StandardTableau> out;
    std::vector<int> filled(p.length(), 0);
    StandardTableau cur{std::vector<int>(n), std::vector<int>(n)};
    auto rec = [&](auto &&self, int letter) -> void {
        if (letter > n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t r = 0; r < p.length(); ++r) {
            if (filled[r] < p[r] && (r == 0 || filled[r - 1] > filled[r])) {
                cur.row_of[letter - 1] = static_cast<int>(r);
                cur.col_of[letter - 1] = filled[r];
                ++filled[r];
                self(self, letter + 1);
                --filled[r];
            }
        }
    };
    rec(rec, 1);
    std::sort(out.begin(), out.end(), [n](const StandardTableau &a, const StandardTableau &b) {
        for (int l = n - 1; l >= 0; --l)
            if (a.row_of[l] != b.row_of[l])
                return a.row_of[l] < b.row_of[l];
        return false;
    });
    return out;
}

struct IrrepMatrixSym {
    Partition partition;
    Eigen::MatrixXd entries;
};

namespace detail {

inline Eigen::MatrixXd young_adjacent(const std::vector<StandardTableau> &tabs, int i) {
    const auto dim = static_cast<Eigen::Index>(tabs.size());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        const auto &t = tabs[a];
        const double d = t.content(i + 1) - t.content(i);
        g(a, a) = 1.0 / d;
        if (std::abs(d) < 2.0)
            continue;
        auto swapped = t;
        std::swap(swapped.row_of[i - 1], swapped.row_of[i]);
        std::swap(swapped.col_of[i - 1], swapped.col_of[i]);
        for (Eigen::Index b = 0; b < dim; ++b) {
            if (tabs[b].row_of == swapped.row_of && tabs[b].col_of == swapped.col_of) {
                g(b, a) = std::sqrt(1.0 - 1.0 / (d * d));
                break;
            }
        }
    }
    return g;
}

} // namespace detail

/// Young's orthogonal form Gamma^{p}(s), basis in last-letter order.
inline IrrepMatrixSym young_orthogonal(const Partition &p, const Permutation &s) {
    if (p.n() != s.size())
        throw DomainError("young_orthogonal: degree mismatch");
    const auto tabs = standard_tableaux(p);
    const auto dim = static_cast<Eigen::Index>(tabs.size());
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(dim, dim);
    for (int i : s.reduced_word())
        g = g * detail::young_adjacent(tabs, i);
    return {p, std::move(g)};
}

} // namespace immdfun
