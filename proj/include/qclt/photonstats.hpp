#pragma once

#include <cstddef>
#include <vector>

#include "qclt/asymptotic.hpp"

namespace qclt::photonstats {

enum class Method { recursion, closed_form, convolution, quadrature };

// Photon-number probabilities p[0..M] plus a bound on the mass beyond M.
// The bound is rigorous (Chernoff through the generating function) for
// every method except quadrature, where it is the residual 1 - sum p.
struct PhotonNumberDistribution {
    std::vector<double> p;
    double tail_bound = 0.0;
    Method method = Method::recursion;

    double mean() const;  // truncated sums over the stored entries
    double variance() const;
    void validate(double norm_tol = 1e-9) const;
};

struct Moments {
    double mean;      // r * sum lambda
    double variance;  // r * sum lambda + r^2 * sum lambda^2
    double purity;    // sum lambda^2
};

// G(beta) = sum_m p_m beta^m for mean-r sources on an overlap spectrum:
// prod_u 1/(1 + r (1 - beta) lambda_u). Finite for beta < 1 + 1/(r lambda_max).
double generating_function(const std::vector<double>& lambda, double r,
                           double beta);

// The same object straight from the covariance form,
// det(I + (1 - beta) F)^{-1/2}; kept as an independent route.
double generating_function(const asymptotic::AsymptoticState& state, double beta);

Moments moments_of(const std::vector<double>& lambda, double r);

// M(beta) = G(e^beta) and its derivatives at 0: 1, mean, variance + mean^2.
double moment_generating(const std::vector<double>& lambda, double r, double beta);

struct MgfDerivatives {
    double value;
    double first;
    double second;
};
MgfDerivatives moment_generating_derivatives(const std::vector<double>& lambda,
                                             double r);

// Power-sum recursion p_m = (1/m) sum_{l<m} p_l T(m-l) with
// T(j) = sum_u q_u^j, q_u = r lambda_u / (1 + r lambda_u). Entries are
// produced until the tail bound reaches eps; hitting m_max first throws.
PhotonNumberDistribution pnd_recursive(const std::vector<double>& lambda, double r,
                                       std::size_t m_max, double eps = 1e-12);

// Anisotropic states through the form spectrum: T(j) = (1/2) sum_k h_k^j
// with h_k = g_k / (1 + g_k).
PhotonNumberDistribution pnd_general(const asymptotic::AsymptoticState& state,
                                     std::size_t m_max, double eps = 1e-12);

// Equal-overlap limit at parameter x: a Poisson of mean 1 - x convolved
// with a geometric of mean x. Two deliberately separate routes that must
// agree; both return entries 0..m_max.
PhotonNumberDistribution interpolation_closed_form(double x, std::size_t m_max);
PhotonNumberDistribution interpolation_convolution(double x, std::size_t m_max);
// Closed form up to x = 0.9, convolution beyond.
PhotonNumberDistribution pnd_interpolation(double x, std::size_t m_max);

// p_m = int_0^inf e^{-t} L_m(t) chi(t) dt for a radial single-mode chi;
// anisotropy is detected on probe circles and refused. Gauss-Laguerre
// levels refine until the entries settle.
PhotonNumberDistribution pnd_quadrature(const asymptotic::CharFn& chi,
                                        std::size_t m_max);

}  // namespace qclt::photonstats
