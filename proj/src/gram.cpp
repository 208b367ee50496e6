#include "qclt/gram.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qclt/errors.hpp"

namespace qclt::gram {

namespace {
constexpr double kNormTol = 1e-10;
constexpr double kHermTol = 1e-12;
constexpr double kDiagTol = 1e-8;
constexpr double kPsdFloor = -1e-10;
constexpr double kOffDiagSlack = 1e-12;
}  // namespace

GramMatrix gram_from_states(const std::vector<std::vector<cd>>& states) {
    const std::size_t n = states.size();
    if (n == 0) throw std::invalid_argument("no source states given");
    const std::size_t dim = states[0].size();
    if (dim == 0) throw std::invalid_argument("source states must have positive dimension");
    for (std::size_t i = 0; i < n; ++i) {
        if (states[i].size() != dim) {
            std::ostringstream os;
            os << "state " << i << " has dimension " << states[i].size() << ", expected " << dim;
            throw std::invalid_argument(os.str());
        }
        double norm2 = 0.0;
        for (const cd& v : states[i]) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("non-finite state amplitude");
            norm2 += std::norm(v);
        }
        if (std::abs(std::sqrt(norm2) - 1.0) > kNormTol) {
            std::ostringstream os;
            os << "state " << i << " is not unit norm (|norm - 1| = "
               << std::abs(std::sqrt(norm2) - 1.0) << ")";
            throw std::invalid_argument(os.str());
        }
    }

    ComplexMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        s(i, i) = cd{1.0, 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            cd ip{0.0, 0.0};
            for (std::size_t k = 0; k < dim; ++k) ip += std::conj(states[i][k]) * states[j][k];
            s(i, j) = ip;
            s(j, i) = std::conj(ip);
        }
    }
    return validate_gram(s);
}

GramMatrix validate_gram(const ComplexMatrix& s) {
    if (!s.square() || s.rows() == 0)
        throw std::invalid_argument("overlap matrix must be square and nonempty");
    const std::size_t n = s.rows();

    double defect = s.hermiticity_defect();
    if (defect > kHermTol) {
        std::ostringstream os;
        os << "overlap matrix is not Hermitian (defect " << defect << ")";
        throw std::invalid_argument(os.str());
    }

    GramMatrix out;
    out.s = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.s(i, j) = 0.5 * (s(i, j) + std::conj(s(j, i)));

    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(out.s(i, i) - cd{1.0, 0.0}) > kDiagTol) {
            std::ostringstream os;
            os << "diagonal entry " << i << " is not 1 (value " << out.s(i, i).real() << ")";
            throw std::invalid_argument(os.str());
        }
        out.s(i, i) = cd{1.0, 0.0};
    }

    auto eig = linalg::eig_hermitian(out.s);
    out.min_eigenvalue = eig.values.back();
    if (out.min_eigenvalue < kPsdFloor) {
        std::ostringstream os;
        os << "overlap matrix is not positive semidefinite (minimum eigenvalue "
           << out.min_eigenvalue << ")";
        throw std::invalid_argument(os.str());
    }
    // redundant once PSD holds, except within the tolerance band; kept as a
    // direct guard with its own message
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (std::abs(out.s(i, j)) > 1.0 + kOffDiagSlack) {
                std::ostringstream os;
                os << "overlap magnitude |S_" << i << j << "| = " << std::abs(out.s(i, j))
                   << " exceeds 1";
                throw std::invalid_argument(os.str());
            }
        }
    return out;
}

InternalFactor factor_gram(const GramMatrix& g, double rank_tol) {
    const std::size_t n = g.size();
    auto eig = linalg::eig_hermitian(g.s);
    const double lead = eig.values.front();
    if (lead <= 0.0)
        throw numeric_error("overlap matrix has no positive eigenvalue to factor");

    std::size_t d = 0;
    while (d < n && eig.values[d] > rank_tol * lead) ++d;

    InternalFactor f;
    f.c = ComplexMatrix(n, d);
    for (std::size_t u = 0; u < d; ++u) {
        const double root = std::sqrt(eig.values[u]);
        for (std::size_t i = 0; i < n; ++i) f.c(i, u) = eig.vectors(i, u) * root;
    }

    auto recon = f.c * f.c.adjoint();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(recon(i, j) - g.s(i, j)));
    if (worst > 1e-9) {
        std::ostringstream os;
        os << "factor does not reproduce the overlap matrix (max deviation " << worst << ")";
        throw numeric_error(os.str());
    }
    return f;
}

GammaMatrix gamma_of(const InternalFactor& f) {
    const std::size_t n = f.sources();
    if (n == 0) throw std::invalid_argument("factor has no rows");
    GammaMatrix g;
    g.sources = n;
    const cd scale{1.0 / static_cast<double>(n), 0.0};
    g.m = scale * (f.c.adjoint() * f.c);
    g.sym = scale * (f.c.transpose() * f.c);
    auto eig = linalg::eig_hermitian(g.m);
    g.spectrum = eig.values;

    double sum = 0.0;
    for (double v : g.spectrum) sum += v;
    if (std::abs(sum - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "normalized overlap spectrum does not sum to 1 (sum " << sum
           << "); rows of the factor are not unit norm";
        throw numeric_error(os.str());
    }
    return g;
}

ComplexMatrix interpolation_gram(double x, std::size_t n) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("overlap parameter x must lie in [0, 1]");
    if (n < 2) throw std::domain_error("equal-overlap family needs n >= 2");
    ComplexMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s(i, j) = cd{i == j ? 1.0 : x, 0.0};
    return s;
}

std::vector<double> interpolation_spectrum(double x, long n) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("overlap parameter x must lie in [0, 1]");
    if (n < 2) throw std::domain_error("equal-overlap family needs n >= 2");
    const double nn = static_cast<double>(n);
    std::vector<double> lam(static_cast<std::size_t>(n), (1.0 - x) / nn);
    lam[0] = (1.0 + (nn - 1.0) * x) / nn;
    return lam;
}

std::vector<double> interpolation_limit_spectrum(double x, long n_eff) {
    if (n_eff < 2) throw std::domain_error("effective size must be >= 2");
    return interpolation_spectrum(x, n_eff);
}

}  // namespace qclt::gram
