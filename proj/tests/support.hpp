#pragma once

// Shared test fixtures: deterministic random matrices and small helpers.
// Every generator takes an explicit seed so failures reproduce exactly.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qclt/linalg.hpp"

namespace testsup {

using qclt::linalg::cd;
using qclt::linalg::ComplexMatrix;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline cd random_cd(std::mt19937_64& g) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(g), u(g)};
}

inline ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
    auto g = rng(seed);
    ComplexMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = random_cd(g);
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
    auto g = rng(seed);
    ComplexMatrix m(n, n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = u(g);
        for (std::size_t j = i + 1; j < n; ++j) {
            cd v = random_cd(g);
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return m;
}

// Unit-norm internal states of dimension dim; rows of the returned list.
inline std::vector<std::vector<cd>> random_states(std::size_t count, std::size_t dim,
                                                  std::uint64_t seed) {
    auto g = rng(seed);
    std::vector<std::vector<cd>> states(count);
    for (auto& s : states) {
        s.resize(dim);
        double norm2 = 0.0;
        for (auto& v : s) {
            v = random_cd(g);
            norm2 += std::norm(v);
        }
        double inv = 1.0 / std::sqrt(norm2);
        for (auto& v : s) v *= inv;
    }
    return states;
}

// Random unitary by Gram-Schmidt on a random complex matrix.
inline ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    auto g = rng(seed);
    std::vector<std::vector<cd>> cols(n, std::vector<cd>(n));
    for (auto& col : cols)
        for (auto& v : col) v = random_cd(g);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            cd ip{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) ip += std::conj(cols[j][i]) * cols[k][i];
            for (std::size_t i = 0; i < n; ++i) cols[k][i] -= ip * cols[j][i];
        }
        double norm2 = 0.0;
        for (auto& v : cols[k]) norm2 += std::norm(v);
        double inv = 1.0 / std::sqrt(norm2);
        for (auto& v : cols[k]) v *= inv;
    }
    ComplexMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) u(i, j) = cols[j][i];
    return u;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

}  // namespace testsup
