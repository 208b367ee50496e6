#pragma once

#include <cstddef>
#include <vector>

#include "qclt/linalg.hpp"

namespace qclt::gram {

using linalg::cd;
using linalg::ComplexMatrix;

// ---- Types -------------------------------------------------------------

// Pairwise-overlap matrix of the source states: Hermitian, unit diagonal,
// positive semidefinite (floor -1e-10), |S_ij| <= 1.
struct GramMatrix {
    ComplexMatrix s;
    double min_eigenvalue = 0.0;
    std::size_t size() const { return s.rows(); }
};

// n x d matrix whose rows are the source states written in an orthonormal
// internal basis: C C^dagger = S, rows unit norm. d is the overlap rank.
struct InternalFactor {
    ComplexMatrix c;
    std::size_t sources() const { return c.rows(); }
    std::size_t dim() const { return c.cols(); }
    bool real(double tol = 1e-12) const { return c.max_abs_imag() <= tol; }
};

// C^dagger C / n: Hermitian positive definite with unit trace; spectrum
// descending. Shares its nonzero spectrum with S/n. `sym` is the companion
// C^T C / n (complex symmetric) that pair correlations couple to; it equals
// `m` whenever C is real.
struct GammaMatrix {
    ComplexMatrix m;
    ComplexMatrix sym;
    std::vector<double> spectrum;
    std::size_t sources = 0;
};

// Equal-overlap family: S_ij = delta_ij + x (1 - delta_ij). `limit` marks
// the n -> infinity member.
struct InterpolationModel {
    double x = 0.0;
    long n = 0;
    bool limit = false;
};

// ---- Operations --------------------------------------------------------

// S_ij = <phi_i|phi_j>, conjugate-linear in the first argument. States must
// share a dimension and be unit-norm to 1e-10.
GramMatrix gram_from_states(const std::vector<std::vector<cd>>& states);

// Checks Hermiticity (1e-12), unit diagonal (snapped to exactly 1),
// |S_ij| <= 1 + 1e-12 and PSD (>= -1e-10); reports the minimum eigenvalue.
GramMatrix validate_gram(const ComplexMatrix& s);

// C = Q_d sqrt(Lambda_d) over eigenvalues above rank_tol * lambda_max.
InternalFactor factor_gram(const GramMatrix& g, double rank_tol = 1e-10);

GammaMatrix gamma_of(const InternalFactor& f);

// S~(x) at size n.
ComplexMatrix interpolation_gram(double x, std::size_t n);

// Eigenvalues of S~(x)/n: (1 + (n-1)x)/n once, (1-x)/n with multiplicity
// n-1. Descending, sums to 1.
std::vector<double> interpolation_spectrum(double x, long n);

// Large-n stand-in for the limit member: the finite-n spectrum evaluated at
// n_eff (top eigenvalue ~ x, a near-zero cloud carrying the rest).
std::vector<double> interpolation_limit_spectrum(double x, long n_eff = 1000000);

}  // namespace qclt::gram
