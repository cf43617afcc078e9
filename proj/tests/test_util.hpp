#pragma once

#include <random>

#include <immdfun/linalg.hpp>

namespace immdfun::fixtures {

inline ComplexMatrix random_matrix(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = cplx(u(rng), u(rng));
    return m;
}

inline Permutation random_permutation(int n, std::mt19937_64 &rng) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    std::shuffle(im.begin(), im.end(), rng);
    return Permutation(im);
}

/// Permutation matrix with P e_i = e_{s(i)}.
inline ComplexMatrix permutation_matrix(const Permutation &s) {
    ComplexMatrix p = ComplexMatrix::Zero(s.size(), s.size());
    for (int i = 1; i <= s.size(); ++i)
        p(s(i) - 1, i - 1) = 1.0;
    return p;
}

} // namespace immdfun::fixtures
