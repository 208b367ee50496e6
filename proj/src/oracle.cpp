#include "qclt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "qclt/errors.hpp"

namespace qclt::oracle {
namespace {

// Occupation vectors are packed 3 bits per slot into one 64-bit key, so the
// folding map stays flat. 3 bits force the 7-photon cap; 20 slots fit.
constexpr std::size_t kPackBits = 3;
constexpr std::size_t kHardPhotonCap = 7;
constexpr std::size_t kHardSlotCap = 20;
constexpr double kNormTol = 1e-10;

double factorial(std::size_t k) {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return f;
}

void check_limits(const OracleLimits& limits) {
    if (limits.max_photons > kHardPhotonCap) {
        std::ostringstream os;
        os << "photon cap " << limits.max_photons
           << " does not fit the packed occupation keys (hard cap "
           << kHardPhotonCap << ")";
        throw std::invalid_argument(os.str());
    }
    if (limits.max_slots > kHardSlotCap) {
        std::ostringstream os;
        os << "slot cap " << limits.max_slots << " exceeds the hard cap "
           << kHardSlotCap;
        throw std::invalid_argument(os.str());
    }
}

// Photon-count marginal over the first `lead` slots. Probability of an
// occupation pattern is |amp|^2 prod occ!; their total must be 1 because
// photons entering distinct ports carry orthonormal single-particle states.
ExactDistribution port_marginal(const FockPolynomial& poly, std::size_t lead) {
    ExactDistribution dist;
    dist.p.assign(poly.photons + 1, 0.0);
    double total = 0.0;
    for (const auto& term : poly.terms) {
        std::size_t count = 0;
        double occ_fact = 1.0;
        for (std::size_t s = 0; s < poly.slots; ++s) {
            const std::size_t occ = term.occupation[s];
            if (s < lead) count += occ;
            occ_fact *= factorial(occ);
        }
        const double weight = std::norm(term.amplitude) * occ_fact;
        dist.p[count] += weight;
        total += weight;
    }
    if (std::abs(total - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "output expansion lost normalization (total probability "
           << total << ")";
        throw numeric_error(os.str());
    }
    return dist;
}

}  // namespace

ComplexMatrix unbiased_unitary(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("interferometer size must be positive");
    ComplexMatrix u(n, n);
    const double root = 1.0 / std::sqrt(static_cast<double>(n));
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const double angle = step * static_cast<double>((j * k) % n);
            u(j, k) = std::polar(root, angle);
        }
    return u;
}

double FockPolynomial::norm() const {
    double total = 0.0;
    for (const auto& term : terms) {
        double occ_fact = 1.0;
        for (auto occ : term.occupation) occ_fact *= factorial(occ);
        total += std::norm(term.amplitude) * occ_fact;
    }
    return total;
}

FockPolynomial expand_output_state(const ComplexMatrix& w,
                                   const OracleLimits& limits) {
    check_limits(limits);
    const std::size_t n = w.rows();
    const std::size_t slots = w.cols();
    if (n == 0 || slots == 0)
        throw std::invalid_argument(
            "expansion needs at least one photon and one slot");
    if (n > limits.max_photons) {
        std::ostringstream os;
        os << n << " photons exceed the exact-expansion cap "
           << limits.max_photons;
        throw unsupported_error(os.str());
    }
    if (slots > limits.max_slots) {
        std::ostringstream os;
        os << slots << " slots exceed the exact-expansion cap "
           << limits.max_slots;
        throw unsupported_error(os.str());
    }

    // Fold one photon at a time. The ordered map fixes the accumulation
    // order, so repeated runs agree bit for bit.
    std::map<std::uint64_t, cd> terms;
    terms.emplace(0u, cd{1.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        std::map<std::uint64_t, cd> next;
        for (const auto& [key, amp] : terms)
            for (std::size_t s = 0; s < slots; ++s) {
                const cd coeff = w(i, s);
                if (coeff == cd{0.0, 0.0}) continue;
                next[key + (std::uint64_t{1} << (kPackBits * s))] +=
                    amp * coeff;
            }
        terms = std::move(next);
    }

    FockPolynomial poly;
    poly.slots = slots;
    poly.photons = n;
    poly.terms.reserve(terms.size());
    for (const auto& [key, amp] : terms) {
        FockTerm term;
        term.occupation.resize(slots);
        for (std::size_t s = 0; s < slots; ++s)
            term.occupation[s] = static_cast<std::uint8_t>(
                (key >> (kPackBits * s)) & ((std::uint64_t{1} << kPackBits) - 1));
        term.amplitude = amp;
        poly.terms.push_back(std::move(term));
    }
    std::sort(poly.terms.begin(), poly.terms.end(),
              [](const FockTerm& a, const FockTerm& b) {
                  return std::lexicographical_compare(
                      a.occupation.begin(), a.occupation.end(),
                      b.occupation.begin(), b.occupation.end());
              });
    return poly;
}

double ExactDistribution::mean() const {
    double acc = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m)
        acc += static_cast<double>(m) * p[m];
    return acc;
}

ExactDistribution exact_output_distribution(const gram::InternalFactor& factor,
                                            const OracleLimits& limits) {
    check_limits(limits);
    const std::size_t n = factor.sources();
    const std::size_t d = factor.dim();
    if (n == 0 || d == 0)
        throw std::invalid_argument("internal factor is empty");

    // Everything the counted port does not see enters only through the
    // environment Gram B_ik = (delta_ik - 1/n) S_ik, so any orthonormal
    // factorization of B stands in for the other n - 1 ports.
    const ComplexMatrix s = factor.c * factor.c.adjoint();
    ComplexMatrix b(n, n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double mask = (i == k ? 1.0 : 0.0) - inv_n;
            b(i, k) = s(i, k) * mask;
        }
    const auto eig = linalg::eig_hermitian(b);
    const double lambda_max = eig.values.empty() ? 0.0 : eig.values.front();
    const double cut = std::max(1e-12, 1e-10 * std::max(lambda_max, 0.0));
    std::size_t rank = 0;
    while (rank < eig.values.size() && eig.values[rank] > cut) ++rank;

    const std::size_t width = d + rank;
    if (width > limits.max_slots) {
        std::ostringstream os;
        os << "reduced expansion needs " << width << " slots (dim " << d
           << " + environment rank " << rank << "), cap is "
           << limits.max_slots;
        throw unsupported_error(os.str());
    }

    ComplexMatrix w(n, width);
    const double root = std::sqrt(inv_n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t u = 0; u < d; ++u) w(i, u) = factor.c(i, u) * root;
        for (std::size_t k = 0; k < rank; ++k)
            w(i, d + k) = eig.vectors(i, k) * std::sqrt(eig.values[k]);
    }
    return port_marginal(expand_output_state(w, limits), d);
}

ExactDistribution exact_output_distribution_with_unitary(
    const gram::InternalFactor& factor, const ComplexMatrix& u,
    const OracleLimits& limits) {
    check_limits(limits);
    const std::size_t n = factor.sources();
    const std::size_t d = factor.dim();
    if (n == 0 || d == 0)
        throw std::invalid_argument("internal factor is empty");
    if (u.rows() != n || u.cols() != n) {
        std::ostringstream os;
        os << "interferometer is " << u.rows() << " x " << u.cols()
           << " but there are " << n << " photons";
        throw std::invalid_argument(os.str());
    }
    const ComplexMatrix g = u.adjoint() * u;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cd want = i == j ? cd{1.0, 0.0} : cd{0.0, 0.0};
            if (std::abs(g(i, j) - want) > 1e-10)
                throw std::invalid_argument(
                    "interferometer matrix is not unitary");
        }

    const std::size_t slots = n * d;
    if (slots > limits.max_slots) {
        std::ostringstream os;
        os << "literal expansion needs " << n << " * " << d << " = " << slots
           << " slots, cap is " << limits.max_slots
           << "; use the reduced route";
        throw unsupported_error(os.str());
    }

    // Slot (j, u) -> j * d + u, so the counted port (first column of u)
    // owns the leading d slots, matching the reduced layout.
    ComplexMatrix w(n, slots);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t v = 0; v < d; ++v)
                w(i, j * d + v) = u(i, j) * factor.c(i, v);
    return port_marginal(expand_output_state(w, limits), d);
}

double classical_binomial(std::size_t n, std::size_t m) {
    if (n == 0)
        throw std::invalid_argument("binomial law needs at least one trial");
    if (m > n) {
        std::ostringstream os;
        os << "cannot place " << m << " of " << n << " particles in one port";
        throw std::domain_error(os.str());
    }
    // C(n, m) n^{-m} (1 - 1/n)^{n - m} without forming the huge factorials.
    double lead = 1.0;
    for (std::size_t k = 0; k < m; ++k)
        lead *= static_cast<double>(n - k) / static_cast<double>(n);
    lead /= factorial(m);
    const double tail =
        n == m ? 1.0
               : std::exp(static_cast<double>(n - m) *
                          std::log1p(-1.0 / static_cast<double>(n)));
    return lead * tail;
}

TvResult tv_distance(const std::vector<double>& p, double tail_p,
                     const std::vector<double>& q, double tail_q) {
    if (!(tail_p >= 0.0) || !(tail_q >= 0.0))
        throw std::invalid_argument("tail masses must be nonnegative");
    const std::size_t len = std::max(p.size(), q.size());
    double acc = 0.0;
    for (std::size_t m = 0; m < len; ++m) {
        const double a = m < p.size() ? p[m] : 0.0;
        const double b = m < q.size() ? q[m] : 0.0;
        acc += std::abs(a - b);
    }
    return TvResult{0.5 * acc, 0.5 * (tail_p + tail_q)};
}

}  // namespace qclt::oracle
