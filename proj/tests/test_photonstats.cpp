#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qclt/asymptotic.hpp"
#include "qclt/errors.hpp"
#include "qclt/gram.hpp"
#include "qclt/photonstats.hpp"
#include "support.hpp"

using qclt::linalg::cd;
using qclt::linalg::ComplexMatrix;
namespace gram = qclt::gram;
namespace asym = qclt::asymptotic;
namespace ph = qclt::photonstats;

namespace {

gram::InternalFactor all_ones_factor(std::size_t n) {
    ComplexMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s(i, j) = 1.0;
    return gram::factor_gram(gram::validate_gram(s));
}

asym::AsymptoticState state_of(std::size_t n_sources, std::size_t dim,
                               std::uint64_t seed, const asym::InputMoments& m) {
    auto states = testsup::random_states(n_sources, dim, seed);
    return asym::build_asymptotic(
        gram::gamma_of(gram::factor_gram(gram::gram_from_states(states))), m);
}

// Independent route: multiply the per-mode geometric series of G(beta)
// term by term and read the coefficients off the product.
std::vector<double> series_probabilities(const std::vector<double>& lambda,
                                         double r, std::size_t m_max) {
    std::vector<double> acc(m_max + 1, 0.0);
    acc[0] = 1.0;
    for (double lam : lambda) {
        const double q = r * lam / (1.0 + r * lam);
        std::vector<double> geo(m_max + 1);
        geo[0] = 1.0 - q;
        for (std::size_t m = 1; m <= m_max; ++m) geo[m] = geo[m - 1] * q;
        std::vector<double> next(m_max + 1, 0.0);
        for (std::size_t i = 0; i <= m_max; ++i)
            for (std::size_t j = 0; i + j <= m_max; ++j)
                next[i + j] += acc[i] * geo[j];
        acc = std::move(next);
    }
    return acc;
}

double binom(int n, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return v;
}

// Exact route for anisotropic states: each form eigenvalue contributes
// (1 + g - g beta)^{-1/2}; expand with the central-binomial series
// (1-u)^{-1/2} = sum_j C(2j,j) (u/4)^j and convolve the factors.
std::vector<double> half_power_series(const std::vector<double>& g,
                                      std::size_t m_max) {
    std::vector<double> acc(m_max + 1, 0.0);
    acc[0] = 1.0;
    for (double gk : g) {
        const double h = gk / (1.0 + gk);
        std::vector<double> factor(m_max + 1);
        double central = 1.0;  // C(2j, j) / 4^j
        double hp = 1.0;
        for (std::size_t j = 0; j <= m_max; ++j) {
            factor[j] = central * hp / std::sqrt(1.0 + gk);
            central *= (2.0 * j + 1.0) / (2.0 * j + 2.0);
            hp *= h;
        }
        std::vector<double> next(m_max + 1, 0.0);
        for (std::size_t i = 0; i <= m_max; ++i)
            for (std::size_t j = 0; i + j <= m_max; ++j)
                next[i + j] += acc[i] * factor[j];
        acc = std::move(next);
    }
    return acc;
}

// m-th derivative at 0: central differences with Richardson extrapolation
// in h^2. Analytic inputs reach ~1e-9 with h = 0.2 and three levels.
double fd_derivative(const std::function<double(double)>& f, int m, double h,
                     int levels) {
    std::vector<double> row;
    for (int l = 0; l < levels; ++l) {
        const double step = h / std::pow(2.0, l);
        double acc = 0.0;
        for (int k = 0; k <= m; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binom(m, k) * f((0.5 * m - k) * step);
        }
        row.push_back(acc / std::pow(step, m));
    }
    for (int rr = 1; rr < levels; ++rr)
        for (int l = levels - 1; l >= rr; --l)
            row[l] = (std::pow(4.0, rr) * row[l] - row[l - 1]) /
                     (std::pow(4.0, rr) - 1.0);
    return row[levels - 1];
}

// Exact Laguerre moments: int_0^inf e^{-t} L_m(t) t^k dt
// = (-1)^m (k!)^2 / ((k-m)! m!). Lets polynomial chi be expanded by hand.
double laguerre_moment(int k, int m) {
    if (m > k) return 0.0;
    double v = (m % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < m; ++i) v = v * (k - i) / (i + 1);  // C(k, m)
    for (int i = 2; i <= k; ++i) v *= i;                    // k!
    return v;  // C(k,m) * k! * (-1)^m = (k!)^2 / ((k-m)! m!) * (-1)^m
}

double sum_p(const ph::PhotonNumberDistribution& d) {
    double s = 0.0;
    for (double v : d.p) s += v;
    return s;
}

}  // namespace

TEST_SUITE("generating function") {
    TEST_CASE("single indistinguishable mode is 1/(2 - beta)") {
        const std::vector<double> lambda{1.0};
        CHECK(ph::generating_function(lambda, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(ph::generating_function(lambda, 1.0, 0.5) ==
              doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        CHECK(ph::generating_function(lambda, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("normalization G(1) = 1 for any spectrum") {
        auto rng = testsup::rng(501);
        std::uniform_real_distribution<double> u(0.05, 1.0);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> lambda(4);
            double sum = 0.0;
            for (auto& l : lambda) {
                l = u(rng);
                sum += l;
            }
            for (auto& l : lambda) l /= sum;
            CHECK(ph::generating_function(lambda, 1.7, 1.0) ==
                  doctest::Approx(1.0).epsilon(1e-13));
        }
    }

    TEST_CASE("the convergence radius is enforced and named") {
        const std::vector<double> lambda{1.0};
        try {
            ph::generating_function(lambda, 1.0, 2.5);
            FAIL("no throw");
        } catch (const std::domain_error& e) {
            CHECK(std::string(e.what()).find("radius") != std::string::npos);
        }
        // beta far below zero stays inside the domain
        CHECK(ph::generating_function(lambda, 1.0, -8.0) > 0.0);
    }

    TEST_CASE("form-determinant route agrees with the spectral product") {
        auto st = state_of(6, 3, 511, asym::InputMoments::thermal(0.8));
        for (double beta : {-0.5, 0.0, 0.4, 0.9, 1.0}) {
            const double via_form = ph::generating_function(st, beta);
            const double via_spectrum =
                ph::generating_function(st.overlap.spectrum, 0.8, beta);
            CHECK(via_form == doctest::Approx(via_spectrum).epsilon(1e-11));
        }
    }

    TEST_CASE("det route matches a direct shifted determinant") {
        auto st = state_of(5, 2, 521, asym::InputMoments::squeezed(0.9, cd{0.3, 0.2}));
        for (double beta : {0.0, 0.5, -1.0}) {
            const cd det = qclt::linalg::det_shifted(st.form, 1.0 - beta);
            CHECK(ph::generating_function(st, beta) ==
                  doctest::Approx(1.0 / std::sqrt(det.real())).epsilon(1e-12));
        }
    }

    TEST_CASE("general route also refuses beta beyond its radius") {
        auto st = state_of(4, 1, 531, asym::InputMoments::thermal(1.0));
        // g_max = 1, radius 2
        CHECK_THROWS_AS(ph::generating_function(st, 2.2), std::domain_error);
    }
}

TEST_SUITE("moments") {
    TEST_CASE("geometric reference values") {
        auto m = ph::moments_of({1.0}, 1.0);
        CHECK(m.mean == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(m.variance == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(m.purity == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("flat spectrum interpolates toward Poisson variance") {
        const std::size_t d = 50;
        std::vector<double> lambda(d, 1.0 / static_cast<double>(d));
        auto m = ph::moments_of(lambda, 1.0);
        CHECK(m.mean == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(m.variance == doctest::Approx(1.0 + 1.0 / 50.0).epsilon(1e-13));
        CHECK(m.purity == doctest::Approx(0.02).epsilon(1e-13));
    }

    TEST_CASE("above-one source occupation keeps the r^2 factor") {
        auto m = ph::moments_of({0.7, 0.3}, 2.0);
        CHECK(m.mean == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(m.variance == doctest::Approx(2.0 + 4.0 * 0.58).epsilon(1e-13));

        // the distribution itself must carry the same truncated moments
        auto dist = ph::pnd_recursive({0.7, 0.3}, 2.0, 400, 1e-13);
        CHECK(dist.mean() == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(dist.variance() == doctest::Approx(4.32).epsilon(1e-8));
    }

    TEST_CASE("cumulant-side derivatives line up with the moments") {
        const std::vector<double> lambda{0.6, 0.4};
        const double r = 1.3;
        auto m = ph::moments_of(lambda, r);
        auto dv = ph::moment_generating_derivatives(lambda, r);
        CHECK(dv.value == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(dv.first == doctest::Approx(m.mean).epsilon(1e-13));
        CHECK(dv.second - dv.first * dv.first ==
              doctest::Approx(m.variance).epsilon(1e-12));

        auto mg = [&](double b) { return ph::moment_generating(lambda, r, b); };
        CHECK(mg(0.0) == doctest::Approx(1.0).epsilon(1e-14));
        const double h = 1e-4;
        CHECK((mg(h) - mg(-h)) / (2.0 * h) == doctest::Approx(dv.first).epsilon(1e-6));
        CHECK((mg(h) - 2.0 * mg(0.0) + mg(-h)) / (h * h) ==
              doctest::Approx(dv.second).epsilon(1e-5));
    }

    TEST_CASE("moment generating function respects the log radius") {
        // radius in beta is ln 2 for the single indistinguishable mode
        CHECK(ph::moment_generating({1.0}, 1.0, 0.5) > 0.0);
        CHECK_THROWS_AS(ph::moment_generating({1.0}, 1.0, 0.8), std::domain_error);
    }
}

TEST_SUITE("recursion") {
    TEST_CASE("fully indistinguishable mean-one counts are geometric") {
        auto dist = ph::pnd_recursive({1.0}, 1.0, 200, 1e-13);
        REQUIRE(dist.p.size() >= 31);
        for (std::size_t m = 0; m <= 30; ++m)
            CHECK(dist.p[m] == doctest::Approx(std::pow(0.5, m + 1.0)).epsilon(1e-13));
        CHECK(dist.method == ph::Method::recursion);
        dist.validate();
    }

    TEST_CASE("a flat wide spectrum approaches Poisson counts") {
        const std::size_t d = 10000;
        std::vector<double> lambda(d, 1.0 / static_cast<double>(d));
        auto dist = ph::pnd_recursive(lambda, 1.0, 400, 1e-10);
        for (std::size_t m = 0; m <= 8; ++m) {
            double pois = std::exp(-1.0);
            for (std::size_t k = 1; k <= m; ++k) pois /= static_cast<double>(k);
            CHECK(std::abs(dist.p[m] - pois) < 5e-4);
        }
    }

    TEST_CASE("zero occupation is the vacuum point mass") {
        auto dist = ph::pnd_recursive({0.5, 0.5}, 0.0, 10, 1e-12);
        REQUIRE(dist.p.size() == 1);
        CHECK(dist.p[0] == 1.0);
        CHECK(dist.tail_bound == 0.0);
    }

    TEST_CASE("recursion equals the series-composition route") {
        auto rng = testsup::rng(541);
        std::uniform_real_distribution<double> u(0.05, 1.0);
        std::uniform_real_distribution<double> ur(0.2, 3.0);
        for (int trial = 0; trial < 6; ++trial) {
            const std::size_t d = 1 + static_cast<std::size_t>(trial % 4);
            std::vector<double> lambda(d);
            double sum = 0.0;
            for (auto& l : lambda) {
                l = u(rng);
                sum += l;
            }
            for (auto& l : lambda) l /= sum;
            const double r = ur(rng);
            auto dist = ph::pnd_recursive(lambda, r, 2000, 1e-13);
            auto series = series_probabilities(lambda, r, 25);
            for (std::size_t m = 0; m <= 25 && m < dist.p.size(); ++m)
                CHECK(std::abs(dist.p[m] - series[m]) < 1e-12);
        }
    }

    TEST_CASE("stored mass plus the tail bound covers one") {
        auto dist = ph::pnd_recursive({0.6, 0.4}, 1.4, 2000, 1e-9);
        const double total = sum_p(dist);
        CHECK(total <= 1.0 + 1e-12);
        CHECK(total + dist.tail_bound >= 1.0 - 1e-12);
        CHECK(dist.tail_bound <= 1e-9);
        dist.validate();
    }

    TEST_CASE("bad arguments are refused") {
        CHECK_THROWS_AS(ph::pnd_recursive({}, 1.0, 10, 1e-9), std::invalid_argument);
        CHECK_THROWS_AS(ph::pnd_recursive({-0.2, 1.2}, 1.0, 10, 1e-9),
                        std::invalid_argument);
        CHECK_THROWS_AS(ph::pnd_recursive({1.0}, -1.0, 10, 1e-9), std::domain_error);
        CHECK_THROWS_AS(ph::pnd_recursive({1.0}, 1.0, 10, 0.0), std::domain_error);
        CHECK_THROWS_AS(ph::pnd_recursive({1.0}, 1.0, 10, -1e-9), std::domain_error);
    }

    TEST_CASE("an unreachable tolerance inside the cap throws") {
        CHECK_THROWS_AS(ph::pnd_recursive({1.0}, 1.0, 3, 1e-12), qclt::numeric_error);
    }

    TEST_CASE("repeated runs are bit-identical") {
        auto a = ph::pnd_recursive({0.55, 0.45}, 1.1, 500, 1e-11);
        auto b = ph::pnd_recursive({0.55, 0.45}, 1.1, 500, 1e-11);
        REQUIRE(a.p.size() == b.p.size());
        for (std::size_t m = 0; m < a.p.size(); ++m) CHECK(a.p[m] == b.p[m]);
        CHECK(a.tail_bound == b.tail_bound);
    }
}

TEST_SUITE("general form route") {
    TEST_CASE("isotropic states collapse to the overlap recursion") {
        auto st = state_of(6, 3, 551, asym::InputMoments::thermal(0.9));
        auto general = ph::pnd_general(st, 2000, 1e-11);
        auto iso = ph::pnd_recursive(st.overlap.spectrum, 0.9, 2000, 1e-11);
        const std::size_t shared = std::min(general.p.size(), iso.p.size());
        REQUIRE(shared >= 10);
        for (std::size_t m = 0; m < shared; ++m)
            CHECK(std::abs(general.p[m] - iso.p[m]) < 1e-12);
    }

    TEST_CASE("squeezed counts match derivative extraction of G") {
        auto factor = all_ones_factor(2);
        auto st = asym::build_asymptotic(gram::gamma_of(factor),
                                         asym::InputMoments::squeezed(1.0, cd{0.6, 0.0}));
        auto dist = ph::pnd_general(st, 2000, 1e-12);
        auto series = half_power_series(st.form_spectrum, 8);
        for (std::size_t m = 0; m <= 8; ++m)
            CHECK(std::abs(dist.p[m] - series[m]) < 1e-12);
        // finite differences of G are a fully separate numerical route;
        // their conditioning near the radius caps them at ~1e-6 here
        auto g = [&](double beta) { return ph::generating_function(st, beta); };
        for (int m = 0; m <= 6; ++m) {
            double fact = 1.0;
            for (int k = 2; k <= m; ++k) fact *= k;
            const double expected = fd_derivative(g, m, 0.2, 3) / fact;
            CHECK(std::abs(dist.p[static_cast<std::size_t>(m)] - expected) < 2e-6);
        }
        dist.validate();
    }

    TEST_CASE("two-mode complex squeezing also matches the derivatives") {
        auto factor = gram::factor_gram(gram::validate_gram(ComplexMatrix::identity(2)));
        auto st = asym::build_asymptotic(
            gram::gamma_of(factor), asym::InputMoments::squeezed(0.9, cd{0.4, -0.25}));
        auto dist = ph::pnd_general(st, 2000, 1e-12);
        auto series = half_power_series(st.form_spectrum, 8);
        for (std::size_t m = 0; m <= 8; ++m)
            CHECK(std::abs(dist.p[m] - series[m]) < 1e-12);
        auto g = [&](double beta) { return ph::generating_function(st, beta); };
        for (int m = 0; m <= 6; ++m) {
            double fact = 1.0;
            for (int k = 2; k <= m; ++k) fact *= k;
            const double expected = fd_derivative(g, m, 0.2, 3) / fact;
            CHECK(std::abs(dist.p[static_cast<std::size_t>(m)] - expected) < 2e-6);
        }
        // the pair amplitude moves variance but never the mean
        CHECK(dist.mean() == doctest::Approx(0.9).epsilon(1e-6));
    }

    TEST_CASE("vacuum stays put") {
        auto st = state_of(3, 2, 561, asym::InputMoments::vacuum());
        auto dist = ph::pnd_general(st, 10, 1e-12);
        REQUIRE(dist.p.size() == 1);
        CHECK(dist.p[0] == 1.0);
    }
}

TEST_SUITE("equal-overlap family") {
    TEST_CASE("x = 1 is exactly geometric with an exact tail") {
        auto dist = ph::pnd_interpolation(1.0, 20);
        REQUIRE(dist.p.size() == 21);
        for (std::size_t m = 0; m <= 20; ++m)
            CHECK(dist.p[m] == doctest::Approx(std::pow(0.5, m + 1.0)).epsilon(1e-15));
        CHECK(dist.tail_bound == doctest::Approx(std::pow(0.5, 21.0)).epsilon(1e-12));
    }

    TEST_CASE("x = 0 is exactly Poisson of mean one") {
        auto dist = ph::pnd_interpolation(0.0, 12);
        double fact = 1.0;
        for (std::size_t m = 0; m <= 12; ++m) {
            if (m > 0) fact *= static_cast<double>(m);
            CHECK(dist.p[m] == doctest::Approx(std::exp(-1.0) / fact).epsilon(1e-13));
        }
    }

    TEST_CASE("halfway overlap pins the vacuum probability") {
        auto dist = ph::pnd_interpolation(0.5, 10);
        CHECK(dist.p[0] == doctest::Approx(std::exp(-0.5) / 1.5).epsilon(1e-14));
        CHECK(dist.method == ph::Method::closed_form);
    }

    TEST_CASE("closed form and convolution are the same distribution") {
        for (double x : {0.1, 0.3, 0.5, 0.7, 0.85, 0.9, 0.95}) {
            auto closed = ph::interpolation_closed_form(x, 30);
            auto conv = ph::interpolation_convolution(x, 30);
            for (std::size_t m = 0; m <= 30; ++m)
                CHECK(std::abs(closed.p[m] - conv.p[m]) < 1e-12);
        }
    }

    TEST_CASE("the family mean is one for every x") {
        for (double x : {0.0, 0.2, 0.5, 0.8, 1.0}) {
            auto dist = ph::pnd_interpolation(x, 80);
            CHECK(dist.mean() == doctest::Approx(1.0).epsilon(1e-9));
            dist.validate();
        }
    }

    TEST_CASE("a wide finite spectrum reproduces the limit law") {
        const double x = 0.3;
        auto limit = ph::pnd_interpolation(x, 12);
        auto finite = ph::pnd_recursive(gram::interpolation_limit_spectrum(x, 200000),
                                        1.0, 400, 1e-10);
        for (std::size_t m = 0; m <= 12; ++m)
            CHECK(std::abs(limit.p[m] - finite.p[m]) < 1e-4);
    }

    TEST_CASE("switchover picks the convolution branch above 0.9") {
        CHECK(ph::pnd_interpolation(0.95, 10).method == ph::Method::convolution);
        CHECK(ph::pnd_interpolation(0.2, 10).method == ph::Method::closed_form);
    }

    TEST_CASE("parameter domain is [0, 1]") {
        CHECK_THROWS_AS(ph::pnd_interpolation(-0.01, 10), std::domain_error);
        CHECK_THROWS_AS(ph::pnd_interpolation(1.01, 10), std::domain_error);
        CHECK_THROWS_AS(ph::interpolation_closed_form(1.0, 10), std::domain_error);
    }
}

TEST_SUITE("quadrature extraction") {
    TEST_CASE("thermal chi returns the geometric law") {
        auto st = asym::build_asymptotic(gram::gamma_of(all_ones_factor(3)),
                                         asym::InputMoments::thermal(1.0));
        auto dist = ph::pnd_quadrature(asym::asymptotic_chi(st), 15);
        REQUIRE(dist.p.size() == 16);
        for (std::size_t m = 0; m <= 15; ++m)
            CHECK(std::abs(dist.p[m] - std::pow(0.5, m + 1.0)) < 1e-10);
        CHECK(dist.method == ph::Method::quadrature);
    }

    TEST_CASE("four bunched photons match the exact Laguerre expansion") {
        // chi(t) = (1 - t/4)^4; expand in t powers and use the exact
        // Laguerre moments for an independent value of every p_m.
        auto fin = asym::finite_chi(all_ones_factor(4), asym::SourceState::single_photon());
        auto dist = ph::pnd_quadrature(fin, 8);
        for (int m = 0; m <= 8; ++m) {
            double expected = 0.0;
            for (int k = m; k <= 4; ++k) {
                const double a_k = binom(4, k) * std::pow(-0.25, k);
                expected += a_k * laguerre_moment(k, m);
            }
            CHECK(std::abs(dist.p[static_cast<std::size_t>(m)] - expected) < 1e-10);
        }
        // photon number is conserved: no support above 4
        for (std::size_t m = 5; m <= 8; ++m) CHECK(dist.p[m] <= 1e-12);
    }

    TEST_CASE("quadrature agrees with the recursion on a thermal mixture") {
        auto st = asym::build_asymptotic(gram::gamma_of(all_ones_factor(2)),
                                         asym::InputMoments::thermal(0.7));
        auto via_quad = ph::pnd_quadrature(asym::asymptotic_chi(st), 12);
        auto via_rec = ph::pnd_recursive(st.overlap.spectrum, 0.7, 2000, 1e-13);
        for (std::size_t m = 0; m <= 12; ++m)
            CHECK(std::abs(via_quad.p[m] - via_rec.p[m]) < 1e-9);
    }

    TEST_CASE("anisotropic chi is refused") {
        auto st = asym::build_asymptotic(gram::gamma_of(all_ones_factor(2)),
                                         asym::InputMoments::squeezed(1.0, cd{0.6, 0.0}));
        CHECK_THROWS_AS(ph::pnd_quadrature(asym::asymptotic_chi(st), 8),
                        qclt::unsupported_error);
    }

    TEST_CASE("tiny negative coefficients are clamped to zero") {
        auto fin = asym::finite_chi(all_ones_factor(2), asym::SourceState::single_photon());
        auto dist = ph::pnd_quadrature(fin, 4);
        // exact law is {1/2, 0, 1/2}: the null entry must not go negative
        CHECK(dist.p[1] >= 0.0);
        CHECK(dist.p[1] <= 1e-12);
        CHECK(dist.p[0] == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(dist.p[2] == doctest::Approx(0.5).epsilon(1e-10));
    }

    TEST_CASE("repeated extraction is bit-identical") {
        auto st = asym::build_asymptotic(gram::gamma_of(all_ones_factor(2)),
                                         asym::InputMoments::thermal(1.0));
        auto chi = asym::asymptotic_chi(st);
        auto a = ph::pnd_quadrature(chi, 10);
        auto b = ph::pnd_quadrature(chi, 10);
        for (std::size_t m = 0; m < a.p.size(); ++m) CHECK(a.p[m] == b.p[m]);
    }
}

TEST_SUITE("distribution bookkeeping") {
    TEST_CASE("truncated mean and variance of the geometric law") {
        auto dist = ph::pnd_recursive({1.0}, 1.0, 2000, 1e-13);
        CHECK(dist.mean() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(dist.variance() == doctest::Approx(2.0).epsilon(1e-8));
    }

    TEST_CASE("validation notices missing mass and negative entries") {
        ph::PhotonNumberDistribution broken;
        broken.p = {0.4, 0.1};
        broken.tail_bound = 0.0;
        CHECK_THROWS_AS(broken.validate(), qclt::numeric_error);
        broken.p = {1.1};
        CHECK_THROWS_AS(broken.validate(), qclt::numeric_error);
        broken.p = {0.9, -0.05};
        broken.tail_bound = 0.15;
        CHECK_THROWS_AS(broken.validate(), qclt::numeric_error);
    }
}
