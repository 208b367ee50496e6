#include "qclt/asymptotic.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "qclt/errors.hpp"
#include "qclt/quadrature.hpp"

namespace qclt::asymptotic {
namespace {

constexpr double kRealTol = 1e-12;    // overlap treated as real below this
constexpr double kPsdFloor = -1e-10;  // eigenvalue floor for the form
constexpr double kEnvelopeSlack = 1e-12;
constexpr std::size_t kMaxGridPoints = std::size_t{1} << 28;

const double kPi = std::acos(-1.0);

void check_dim(std::size_t expected, std::size_t got) {
    if (expected != got) {
        std::ostringstream os;
        os << "argument has " << got << " mode amplitudes, state has " << expected;
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

void InputMoments::validate() const {
    if (!std::isfinite(mean_n) || mean_n < 0.0)
        throw std::invalid_argument("mean occupation must be finite and nonnegative");
    if (!std::isfinite(pair.real()) || !std::isfinite(pair.imag()))
        throw std::invalid_argument("pair amplitude must be finite");
    const double envelope = std::sqrt(mean_n * (mean_n + 1.0));
    if (std::abs(pair) > envelope + kEnvelopeSlack) {
        std::ostringstream os;
        os << "pair amplitude " << std::abs(pair) << " exceeds the physical bound "
           << "sqrt(mean (mean + 1)) = " << envelope;
        throw std::invalid_argument(os.str());
    }
}

InputMoments InputMoments::thermal(double mean) {
    InputMoments m;
    m.mean_n = mean;
    m.validate();
    return m;
}

InputMoments InputMoments::squeezed(double mean, cd pair) {
    InputMoments m;
    m.mean_n = mean;
    m.pair = pair;
    m.validate();
    return m;
}

SourceState SourceState::single_photon() {
    SourceState s;
    s.kind = Kind::single_photon;
    s.moments.mean_n = 1.0;
    return s;
}

SourceState SourceState::thermal(double mean) {
    SourceState s;
    s.kind = Kind::thermal;
    s.moments = InputMoments::thermal(mean);
    return s;
}

SourceState SourceState::squeezed(double mean, cd pair) {
    SourceState s;
    s.kind = Kind::squeezed;
    s.moments = InputMoments::squeezed(mean, pair);
    return s;
}

AsymptoticState build_asymptotic(const gram::GammaMatrix& overlap,
                                 const InputMoments& moments) {
    moments.validate();
    if (!overlap.m.square() || overlap.m.rows() == 0)
        throw std::invalid_argument("overlap matrix must be square and nonempty");
    const std::size_t d = overlap.m.rows();

    const bool have_sym = overlap.sym.rows() == d && overlap.sym.cols() == d;
    if (!moments.isotropic() && !have_sym)
        throw std::invalid_argument(
            "pair correlations need the symmetric companion C^T C / n; "
            "build the overlap with gamma_of");

    AsymptoticState st;
    st.d = d;
    st.overlap = overlap;
    st.moments = moments;

    const double nu = moments.mean_n;
    const cd mu_bar = std::conj(moments.pair);
    const bool real_overlap =
        overlap.m.max_abs_imag() <= kRealTol &&
        (!have_sym || (overlap.sym - overlap.m).max_abs() <= kRealTol);

    ComplexMatrix f(2 * d, 2 * d);
    if (real_overlap) {
        // tau ⊗ Gamma, written directly so the real case is exact.
        const double t11 = nu + moments.pair.real();
        const double t22 = nu - moments.pair.real();
        const double t12 = moments.pair.imag();
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const double g = overlap.m(i, j).real();
                f(i, j) = t11 * g;
                f(i, j + d) = t12 * g;
                f(i + d, j) = t12 * g;
                f(i + d, j + d) = t22 * g;
            }
        }
    } else {
        // x/p blocks from A = C^dag C / n (Hermitian) and B = C^T C / n
        // (symmetric): mean couples through A, the pair amplitude through B.
        const double k1 = mu_bar.real();
        const double k2 = mu_bar.imag();
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const cd a = overlap.m(i, j);
                const cd b = have_sym ? overlap.sym(i, j) : cd{0.0, 0.0};
                const double p = k1 * b.real() - k2 * b.imag();
                const double q = k1 * b.imag() + k2 * b.real();
                f(i, j) = nu * a.real() + p;
                f(i + d, j + d) = nu * a.real() - p;
                f(i, j + d) = -nu * a.imag() - q;
                f(i + d, j) = nu * a.imag() - q;
            }
        }
    }
    // The blocks are symmetric up to roundoff in the products above; make
    // that exact so the eigensolver sees a clean real form.
    for (std::size_t i = 0; i < 2 * d; ++i) {
        for (std::size_t j = i + 1; j < 2 * d; ++j) {
            const double avg = 0.5 * (f(i, j).real() + f(j, i).real());
            f(i, j) = avg;
            f(j, i) = avg;
        }
        f(i, i) = f(i, i).real();
    }
    st.form = f;
    st.form_spectrum = linalg::eig_hermitian(f).values;

    if (!st.form_spectrum.empty() && st.form_spectrum.back() < kPsdFloor) {
        std::ostringstream os;
        os << "output form has eigenvalue " << st.form_spectrum.back()
           << " < " << kPsdFloor
           << "; no Gaussian limit matches these moments on this overlap "
              "(isotropic overlaps require |pair| <= mean occupation)";
        throw numeric_error(os.str());
    }

    if (moments.isotropic() && nu > 0.0) {
        st.gibbs.reserve(overlap.spectrum.size());
        for (double lambda : overlap.spectrum) {
            if (lambda <= 0.0) {
                std::ostringstream os;
                os << "overlap eigenvalue " << lambda
                   << " is not positive; cannot form Gibbs exponents";
                throw numeric_error(os.str());
            }
            st.gibbs.push_back({lambda, std::log1p(1.0 / (nu * lambda))});
        }
    }
    return st;
}

cd char_fn_asymptotic(const AsymptoticState& state, std::span<const cd> z) {
    check_dim(state.d, z.size());
    const std::size_t d = state.d;
    // F is the covariance form, so chi probes it through the symplectic
    // rotation z -> iz: a large x covariance slows the decay against Im z.
    // For isotropic moments the rotation is invisible.
    std::vector<double> y(2 * d);
    for (std::size_t u = 0; u < d; ++u) {
        y[u] = -z[u].imag();
        y[u + d] = z[u].real();
    }
    double q = 0.0;
    for (std::size_t i = 0; i < 2 * d; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < 2 * d; ++j) row += state.form(i, j).real() * y[j];
        q += y[i] * row;
    }
    return {std::exp(-q), 0.0};
}

cd char_fn_finite(const gram::InternalFactor& factor, const SourceState& input,
                  std::span<const cd> z) {
    check_dim(factor.dim(), z.size());
    const std::size_t n = factor.sources();
    const std::size_t d = factor.dim();
    const double inv_root = 1.0 / std::sqrt(static_cast<double>(n));
    const double nu = input.moments.mean_n;
    const cd mu_bar = std::conj(input.moments.pair);

    double product = 1.0;   // single-photon path
    double exponent = 0.0;  // gaussian paths
    for (std::size_t i = 0; i < n; ++i) {
        cd w{0.0, 0.0};
        for (std::size_t u = 0; u < d; ++u) w += factor.c(i, u) * z[u];
        w *= inv_root;
        switch (input.kind) {
            case SourceState::Kind::single_photon:
                product *= 1.0 - std::norm(w);
                break;
            case SourceState::Kind::thermal:
                exponent -= nu * std::norm(w);
                break;
            case SourceState::Kind::squeezed:
                exponent += -nu * std::norm(w) + (mu_bar * w * w).real();
                break;
        }
    }
    if (input.kind == SourceState::Kind::single_photon) return {product, 0.0};
    return {std::exp(exponent), 0.0};
}

CharFn asymptotic_chi(AsymptoticState state) {
    return [st = std::move(state)](std::span<const cd> z) {
        return char_fn_asymptotic(st, z);
    };
}

CharFn finite_chi(gram::InternalFactor factor, SourceState input) {
    return [f = std::move(factor), input](std::span<const cd> z) {
        return char_fn_finite(f, input, z);
    };
}

PlancherelResult plancherel_distance(const CharFn& a, const CharFn& b,
                                     std::size_t d, const QuadratureSpec& spec) {
    if (d == 0) throw std::invalid_argument("mode count must be at least 1");
    if (d > 2) {
        std::ostringstream os;
        os << "product-grid quadrature handles at most 2 modes, got " << d;
        throw unsupported_error(os.str());
    }
    if (spec.levels.size() < 2)
        throw std::invalid_argument("need at least two refinement levels");
    const std::size_t dims = 2 * d;
    for (std::size_t k : spec.levels) {
        double points = std::pow(static_cast<double>(k), static_cast<double>(dims));
        if (k == 0 || points > static_cast<double>(kMaxGridPoints)) {
            std::ostringstream os;
            os << "refinement level " << k << " needs " << points
               << " grid points; the cap is " << kMaxGridPoints;
            throw std::invalid_argument(os.str());
        }
    }

    const double norm = std::pow(kPi, static_cast<double>(d));
    double prev = 0.0, last_err = 0.0;
    bool have_prev = false;
    for (std::size_t k : spec.levels) {
        const auto& rule = quad::gauss_hermite(k);
        std::size_t count = 1;
        for (std::size_t t = 0; t < dims; ++t) count *= k;
        auto term = [&](std::size_t idx) {
            std::array<std::size_t, 4> digit{};
            double wt = 1.0;
            std::size_t rem = idx;
            for (std::size_t t = 0; t < dims; ++t) {
                digit[t] = rem % k;
                rem /= k;
                wt *= rule.weights[digit[t]];
            }
            std::array<cd, 2> z;
            for (std::size_t u = 0; u < d; ++u)
                z[u] = cd{rule.nodes[digit[u]], rule.nodes[digit[d + u]]};
            const std::span<const cd> zz(z.data(), d);
            return wt * std::norm(a(zz) - b(zz));
        };
        const double total = quad::reduce_indexed(count, spec.workers, term);
        const double dist = std::sqrt(std::max(0.0, total / norm));
        if (have_prev) {
            last_err = std::abs(dist - prev);
            if (last_err <= std::max(spec.abs_tol, spec.rel_tol * std::max(dist, prev)))
                return {dist, last_err, k};
        }
        prev = dist;
        have_prev = true;
    }
    std::ostringstream os;
    os << "quadrature did not settle: last refinement still moved the distance by "
       << last_err;
    throw numeric_error(os.str());
}

ConvergenceTable convergence_sweep(
    const std::function<gram::InternalFactor(int)>& family,
    const SourceState& input, const CharFn& reference, std::size_t d,
    const std::vector<int>& n_list, const QuadratureSpec& spec) {
    if (n_list.empty()) throw std::invalid_argument("sweep needs at least one n");
    ConvergenceTable table;
    table.rows.reserve(n_list.size());
    for (int n : n_list) {
        auto factor = family(n);
        if (factor.dim() != d) {
            std::ostringstream os;
            os << "family produced " << factor.dim() << " internal modes at n = "
               << n << ", expected " << d;
            throw std::invalid_argument(os.str());
        }
        auto fn = finite_chi(std::move(factor), input);
        auto r = plancherel_distance(fn, reference, d, spec);
        table.rows.push_back({n, r.distance, r.error_estimate});
    }

    std::vector<double> xs, ys;
    for (const auto& row : table.rows) {
        if (row.distance > 0.0) {
            xs.push_back(std::log(static_cast<double>(row.n)));
            ys.push_back(std::log(row.distance));
        }
    }
    if (xs.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(xs.size());
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        if (sxx > 0.0) table.slope = sxy / sxx;
    }
    return table;
}

}  // namespace qclt::asymptotic
