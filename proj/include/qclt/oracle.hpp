#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qclt/gram.hpp"
#include "qclt/linalg.hpp"

namespace qclt::oracle {

using linalg::cd;
using linalg::ComplexMatrix;

// n x n discrete-Fourier interferometer; every entry has modulus 1/sqrt(n)
// and the first row and column are exactly flat.
ComplexMatrix unbiased_unitary(std::size_t n);

// One monomial amp * prod_s (a_s^dag)^{occ_s} |0> of a multi-slot expansion.
struct FockTerm {
    std::vector<std::uint8_t> occupation;
    cd amplitude;
};

// Expansion of prod_i (sum_s W_is a_s^dag) |0>, terms sorted by occupation.
struct FockPolynomial {
    std::size_t slots = 0;
    std::size_t photons = 0;
    std::vector<FockTerm> terms;
    double norm() const;  // sum |amp|^2 prod occ!
};

// Exact expansion is exponential in the photon count; these caps keep it
// honest. max_photons beyond 7 would not fit the packed occupation keys.
struct OracleLimits {
    std::size_t max_photons = 7;
    std::size_t max_slots = 20;
};

FockPolynomial expand_output_state(const ComplexMatrix& w,
                                   const OracleLimits& limits = {});

// Photon-count law in one output port; entries 0..n.
struct ExactDistribution {
    std::vector<double> p;
    double mean() const;
};

// Count distribution behind the flat port of the unbiased interferometer
// for n partially distinguishable single photons described by `factor`.
// Works in a reduced slot basis: the factor's internal modes plus an
// orthonormal completion of the environment Gram (delta_ik - 1/n) S_ik,
// so the slot budget is dim + rank instead of n * dim.
ExactDistribution exact_output_distribution(const gram::InternalFactor& factor,
                                            const OracleLimits& limits = {});

// Same law through the literal (output port, internal mode) slot basis for
// an arbitrary interferometer; counts the port fed by the first column.
// Kept as the independent cross-check of the reduced basis.
ExactDistribution exact_output_distribution_with_unitary(
    const gram::InternalFactor& factor, const ComplexMatrix& u,
    const OracleLimits& limits = {});

// Binomial(n, 1/n) counts of distinguishable classical particles.
double classical_binomial(std::size_t n, std::size_t m);

// Total variation between truncated distributions; the unseen mass beyond
// either truncation is surrendered into `tail_allowance`.
struct TvResult {
    double value;
    double tail_allowance;
};
TvResult tv_distance(const std::vector<double>& p, double tail_p,
                     const std::vector<double>& q, double tail_q);

}  // namespace qclt::oracle
