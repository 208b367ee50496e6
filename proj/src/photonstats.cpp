#include "qclt/photonstats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "qclt/errors.hpp"
#include "qclt/linalg.hpp"
#include "qclt/quadrature.hpp"

namespace qclt::photonstats {
namespace {

using linalg::cd;

constexpr double kSpectrumSlack = 1e-12;  // eigensolver noise allowance
constexpr double kQuadTol = 1e-9;         // level-to-level settle threshold
constexpr double kQuadNegFloor = -1e-8;   // worse than this is not noise

std::vector<double> clean_spectrum(const std::vector<double>& lambda) {
    if (lambda.empty()) throw std::invalid_argument("spectrum must not be empty");
    std::vector<double> out(lambda);
    for (double& l : out) {
        if (!std::isfinite(l))
            throw std::invalid_argument("spectrum entries must be finite");
        if (l < -kSpectrumSlack) {
            std::ostringstream os;
            os << "spectrum entry " << l << " is negative";
            throw std::invalid_argument(os.str());
        }
        if (l < 0.0) l = 0.0;
    }
    return out;
}

void check_rate(double r) {
    if (!std::isfinite(r) || r < 0.0)
        throw std::domain_error("source occupation must be finite and nonnegative");
}

// Chernoff tail machine: tail(m) <= G(t) / t^{m+1} for any 1 < t < radius.
// Holds the pgf in log form on a fixed t grid so one setup serves every m.
class TailBounder {
  public:
    TailBounder(const std::function<double(double)>& log_pgf, double radius) {
        auto consider = [&](double t) {
            if (!(t > 1.0) || t >= radius) return;
            const double lg = log_pgf(t);
            if (std::isfinite(lg)) pts_.emplace_back(std::log(t), lg);
        };
        if (std::isfinite(radius))
            for (int k = 1; k <= 15; ++k)
                consider(1.0 + (radius - 1.0) * static_cast<double>(k) / 16.0);
        for (double t = 2.0; t <= 1048576.0 && t < radius; t *= 2.0) consider(t);
    }

    double bound(std::size_t m) const {
        if (pts_.empty()) return 1.0;
        double best = std::numeric_limits<double>::infinity();
        const double order = static_cast<double>(m + 1);
        for (const auto& [lt, lg] : pts_) best = std::min(best, lg - order * lt);
        return std::min(1.0, std::exp(best));
    }

  private:
    std::vector<std::pair<double, double>> pts_;
};

// Shared core of the counting recursion: T(j) = weight * sum_u ratio_u^j,
// p_m = (1/m) sum_{l<m} p_l T(m-l) starting from exp(log_p0).
PhotonNumberDistribution power_sum_recursion(const std::vector<double>& ratio,
                                             double weight, double log_p0,
                                             const TailBounder& tail,
                                             std::size_t m_max, double eps,
                                             Method method) {
    PhotonNumberDistribution out;
    out.method = method;
    out.p.push_back(std::exp(log_p0));

    std::vector<double> power(ratio);  // ratio^j for the next T
    std::vector<double> t_sums;        // t_sums[j-1] = T(j)
    for (std::size_t m = 0;; ++m) {
        const double bound = tail.bound(m);
        if (bound <= eps) {
            out.tail_bound = bound;
            return out;
        }
        if (m >= m_max) {
            std::ostringstream os;
            os << "tail bound " << bound << " still above eps " << eps
               << " at the cap m = " << m_max;
            throw numeric_error(os.str());
        }
        double t_next = 0.0;
        for (std::size_t u = 0; u < ratio.size(); ++u) {
            t_next += power[u];
            power[u] *= ratio[u];
        }
        t_sums.push_back(weight * t_next);
        double acc = 0.0;
        for (std::size_t l = 0; l <= m; ++l) acc += out.p[l] * t_sums[m - l];
        out.p.push_back(acc / static_cast<double>(m + 1));
    }
}

double log_geometric_pgf(const std::vector<double>& ratio, double weight, double t) {
    // log prod_u ((1-q)/(1-qt))^weight; +inf past the pole
    double lg = 0.0;
    for (double q : ratio) {
        const double denom = 1.0 - q * t;
        if (denom <= 0.0) return std::numeric_limits<double>::infinity();
        lg += std::log1p(-q) - std::log(denom);
    }
    return weight * lg;
}

void check_interpolation_x(double x) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0)
        throw std::domain_error("overlap parameter x must lie in [0, 1]");
}

// Tail bound for the Poisson(1-x) * geometric(mean x) law.
double interpolation_tail(double x, std::size_t m_max) {
    if (x == 1.0) return std::pow(0.5, static_cast<double>(m_max + 1));  // exact
    const double q = x / (1.0 + x);
    const double radius =
        x > 0.0 ? 1.0 / q : std::numeric_limits<double>::infinity();
    TailBounder tail(
        [&](double t) {
            const double denom = 1.0 - q * t;
            if (denom <= 0.0) return std::numeric_limits<double>::infinity();
            return (1.0 - x) * (t - 1.0) + std::log1p(-q) - std::log(denom);
        },
        radius);
    return tail.bound(m_max);
}

}  // namespace

double PhotonNumberDistribution::mean() const {
    double acc = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) acc += static_cast<double>(m) * p[m];
    return acc;
}

double PhotonNumberDistribution::variance() const {
    const double mu = mean();
    double acc = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) {
        const double dm = static_cast<double>(m);
        acc += dm * dm * p[m];
    }
    return acc - mu * mu;
}

void PhotonNumberDistribution::validate(double norm_tol) const {
    if (p.empty()) throw numeric_error("distribution has no entries");
    double sum = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) {
        if (!std::isfinite(p[m]) || p[m] < -kSpectrumSlack) {
            std::ostringstream os;
            os << "probability of count " << m << " is " << p[m];
            throw numeric_error(os.str());
        }
        sum += p[m];
    }
    if (!std::isfinite(tail_bound) || tail_bound < 0.0)
        throw numeric_error("tail bound must be a nonnegative number");
    if (sum > 1.0 + norm_tol) {
        std::ostringstream os;
        os << "stored mass " << sum << " exceeds one";
        throw numeric_error(os.str());
    }
    if (sum + tail_bound < 1.0 - norm_tol) {
        std::ostringstream os;
        os << "stored mass " << sum << " plus tail bound " << tail_bound
           << " falls short of one";
        throw numeric_error(os.str());
    }
}

double generating_function(const std::vector<double>& lambda, double r,
                           double beta) {
    auto lam = clean_spectrum(lambda);
    check_rate(r);
    if (!std::isfinite(beta)) throw std::domain_error("beta must be finite");
    const double lmax = *std::max_element(lam.begin(), lam.end());
    if (r * lmax > 0.0) {
        const double radius = 1.0 + 1.0 / (r * lmax);
        if (beta >= radius) {
            std::ostringstream os;
            os << "beta " << beta << " is outside the convergence radius " << radius;
            throw std::domain_error(os.str());
        }
    }
    double lg = 0.0;
    for (double l : lam) lg -= std::log1p((1.0 - beta) * r * l);
    return std::exp(lg);
}

double generating_function(const asymptotic::AsymptoticState& state, double beta) {
    if (!std::isfinite(beta)) throw std::domain_error("beta must be finite");
    const double gmax =
        state.form_spectrum.empty() ? 0.0 : state.form_spectrum.front();
    if (gmax > 0.0) {
        const double radius = 1.0 + 1.0 / gmax;
        if (beta >= radius) {
            std::ostringstream os;
            os << "beta " << beta << " is outside the convergence radius " << radius;
            throw std::domain_error(os.str());
        }
    }
    const cd det = linalg::det_shifted(state.form, 1.0 - beta);
    if (!(det.real() > 0.0))
        throw numeric_error("shifted determinant lost positivity");
    return 1.0 / std::sqrt(det.real());
}

Moments moments_of(const std::vector<double>& lambda, double r) {
    auto lam = clean_spectrum(lambda);
    check_rate(r);
    double s1 = 0.0, s2 = 0.0;
    for (double l : lam) {
        s1 += l;
        s2 += l * l;
    }
    return {r * s1, r * s1 + r * r * s2, s2};
}

double moment_generating(const std::vector<double>& lambda, double r, double beta) {
    if (!std::isfinite(beta)) throw std::domain_error("beta must be finite");
    auto lam = clean_spectrum(lambda);
    check_rate(r);
    const double lmax = *std::max_element(lam.begin(), lam.end());
    const double arg = std::exp(beta);
    if (r * lmax > 0.0) {
        const double radius = 1.0 + 1.0 / (r * lmax);
        if (arg >= radius) {
            std::ostringstream os;
            os << "e^beta = " << arg << " reaches the singularity at " << radius;
            throw std::domain_error(os.str());
        }
    }
    return generating_function(lam, r, arg);
}

MgfDerivatives moment_generating_derivatives(const std::vector<double>& lambda,
                                             double r) {
    auto m = moments_of(lambda, r);
    // M''(0) = E[X^2] = variance + mean^2
    return {1.0, m.mean, m.variance + m.mean * m.mean};
}

PhotonNumberDistribution pnd_recursive(const std::vector<double>& lambda, double r,
                                       std::size_t m_max, double eps) {
    auto lam = clean_spectrum(lambda);
    check_rate(r);
    if (!(eps > 0.0)) throw std::domain_error("eps must be positive");

    std::vector<double> ratio;
    ratio.reserve(lam.size());
    double qmax = 0.0, log_p0 = 0.0;
    for (double l : lam) {
        const double rl = r * l;
        ratio.push_back(rl / (1.0 + rl));
        qmax = std::max(qmax, ratio.back());
        log_p0 -= std::log1p(rl);
    }
    if (qmax == 0.0) {
        PhotonNumberDistribution out;
        out.p = {1.0};
        return out;
    }
    TailBounder tail([&](double t) { return log_geometric_pgf(ratio, 1.0, t); },
                     1.0 / qmax);
    return power_sum_recursion(ratio, 1.0, log_p0, tail, m_max, eps,
                               Method::recursion);
}

PhotonNumberDistribution pnd_general(const asymptotic::AsymptoticState& state,
                                     std::size_t m_max, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("eps must be positive");
    auto g = clean_spectrum(state.form_spectrum);

    std::vector<double> ratio;
    ratio.reserve(g.size());
    double hmax = 0.0, log_p0 = 0.0;
    for (double gk : g) {
        ratio.push_back(gk / (1.0 + gk));
        hmax = std::max(hmax, ratio.back());
        log_p0 -= 0.5 * std::log1p(gk);
    }
    if (hmax == 0.0) {
        PhotonNumberDistribution out;
        out.p = {1.0};
        return out;
    }
    TailBounder tail([&](double t) { return log_geometric_pgf(ratio, 0.5, t); },
                     1.0 / hmax);
    return power_sum_recursion(ratio, 0.5, log_p0, tail, m_max, eps,
                               Method::recursion);
}

PhotonNumberDistribution interpolation_closed_form(double x, std::size_t m_max) {
    check_interpolation_x(x);
    if (x == 1.0)
        throw std::domain_error(
            "closed form needs x < 1; the x = 1 point is purely geometric");

    PhotonNumberDistribution out;
    out.method = Method::closed_form;
    out.p.resize(m_max + 1);
    const double prefix = std::exp(x - 1.0) / (1.0 + x);
    const double decay = 1.0 - x;
    const double rho = x / (1.0 - x * x);

    std::vector<double> inv_fact(m_max + 1);
    inv_fact[0] = 1.0;
    for (std::size_t k = 1; k <= m_max; ++k)
        inv_fact[k] = inv_fact[k - 1] / static_cast<double>(k);

    double decay_pow = 1.0;  // (1-x)^m
    for (std::size_t m = 0; m <= m_max; ++m) {
        double sum = 0.0;
        double rho_pow = 1.0;  // rho^i
        for (std::size_t i = 0; i <= m; ++i) {
            sum += rho_pow * inv_fact[m - i];
            rho_pow *= rho;
        }
        out.p[m] = prefix * decay_pow * sum;
        decay_pow *= decay;
    }
    out.tail_bound = interpolation_tail(x, m_max);
    return out;
}

PhotonNumberDistribution interpolation_convolution(double x, std::size_t m_max) {
    check_interpolation_x(x);
    PhotonNumberDistribution out;
    out.method = Method::convolution;
    out.p.resize(m_max + 1);

    const double mu = 1.0 - x;
    std::vector<double> pois(m_max + 1), geo(m_max + 1);
    pois[0] = std::exp(-mu);
    for (std::size_t j = 1; j <= m_max; ++j)
        pois[j] = pois[j - 1] * mu / static_cast<double>(j);
    const double q = x / (1.0 + x);
    geo[0] = 1.0 / (1.0 + x);
    for (std::size_t j = 1; j <= m_max; ++j) geo[j] = geo[j - 1] * q;

    for (std::size_t m = 0; m <= m_max; ++m) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= m; ++j) acc += pois[j] * geo[m - j];
        out.p[m] = acc;
    }
    out.tail_bound = interpolation_tail(x, m_max);
    return out;
}

PhotonNumberDistribution pnd_interpolation(double x, std::size_t m_max) {
    check_interpolation_x(x);
    // the closed form stays stable well past its cancellation-free zone,
    // but hand the regime near x = 1 to the convolution anyway
    if (x > 0.9) return interpolation_convolution(x, m_max);
    return interpolation_closed_form(x, m_max);
}

PhotonNumberDistribution pnd_quadrature(const asymptotic::CharFn& chi,
                                        std::size_t m_max) {
    auto value_at = [&](double re, double im) {
        const std::array<cd, 1> z{cd{re, im}};
        return chi(std::span<const cd>(z.data(), 1));
    };
    if (std::abs(value_at(0.0, 0.0) - cd{1.0, 0.0}) > 1e-10)
        throw std::invalid_argument("chi(0) must equal 1");
    for (double rho : {0.6, 1.1}) {
        const cd ref = value_at(rho, 0.0);
        for (double ang : {0.9, 2.1, 4.4}) {
            const cd v = value_at(rho * std::cos(ang), rho * std::sin(ang));
            if (std::abs(v - ref) > 1e-10 || std::abs(v.imag()) > 1e-10)
                throw unsupported_error(
                    "chi is not radial; Laguerre extraction needs an isotropic "
                    "single-mode state");
        }
    }

    const std::array<std::size_t, 3> levels{64, 96, 128};
    std::vector<double> prev, current;
    double delta = std::numeric_limits<double>::infinity();
    bool settled = false;
    for (std::size_t points : levels) {
        const auto& rule = quad::gauss_laguerre(points);
        // Fold e^{t/2} into the weights and run the scaled polynomials
        // l_m = e^{-t/2} L_m (|l_m| <= 1), so nothing overflows at the
        // far nodes.
        std::vector<double> wchi(points), lm(points), lp(points);
        for (std::size_t i = 0; i < points; ++i) {
            const double t = rule.nodes[i];
            const double w = rule.weights[i];
            const double scaled =
                w > 0.0 ? std::exp(std::log(w) + 0.5 * t) : 0.0;
            wchi[i] = scaled * value_at(std::sqrt(t), 0.0).real();
            lm[i] = std::exp(-0.5 * t);
            lp[i] = 0.0;
        }
        current.assign(m_max + 1, 0.0);
        for (std::size_t m = 0; m <= m_max; ++m) {
            double acc = 0.0;
            for (std::size_t i = 0; i < points; ++i) acc += wchi[i] * lm[i];
            current[m] = acc;
            const double dm = static_cast<double>(m);
            for (std::size_t i = 0; i < points; ++i) {
                const double next =
                    ((2.0 * dm + 1.0 - rule.nodes[i]) * lm[i] - dm * lp[i]) /
                    (dm + 1.0);
                lp[i] = lm[i];
                lm[i] = next;
            }
        }
        if (!prev.empty()) {
            delta = 0.0;
            for (std::size_t m = 0; m <= m_max; ++m)
                delta = std::max(delta, std::abs(current[m] - prev[m]));
            if (delta <= kQuadTol) {
                settled = true;
                break;
            }
        }
        prev = current;
    }
    if (!settled) {
        std::ostringstream os;
        os << "Laguerre levels did not settle: entries still moved by " << delta;
        throw numeric_error(os.str());
    }

    PhotonNumberDistribution out;
    out.method = Method::quadrature;
    out.p = std::move(current);
    double sum = 0.0;
    for (std::size_t m = 0; m < out.p.size(); ++m) {
        if (out.p[m] < 0.0) {
            if (out.p[m] < kQuadNegFloor) {
                std::ostringstream os;
                os << "extracted probability of count " << m << " is " << out.p[m];
                throw numeric_error(os.str());
            }
            out.p[m] = 0.0;
        }
        sum += out.p[m];
    }
    // No certified bound from sampled data; report the residual mass.
    out.tail_bound = std::max(0.0, 1.0 - sum);
    return out;
}

}  // namespace qclt::photonstats
