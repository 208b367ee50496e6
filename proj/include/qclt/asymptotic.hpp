#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qclt/gram.hpp"
#include "qclt/linalg.hpp"

namespace qclt::asymptotic {

using linalg::cd;
using linalg::ComplexMatrix;

// Second moments of one input mode: mean_n = <a^dagger a>, pair = <a a>.
// Physical only when |pair| <= sqrt(mean_n (mean_n + 1)).
struct InputMoments {
    double mean_n = 0.0;
    cd pair{0.0, 0.0};

    bool isotropic() const { return pair == cd{0.0, 0.0}; }
    void validate() const;

    static InputMoments vacuum() { return {}; }
    static InputMoments thermal(double mean);
    static InputMoments squeezed(double mean, cd pair);
};

// One input source: moments plus the shape needed to evaluate its normally
// ordered characteristic function chi(w) = Tr[rho e^{w a^dag} e^{-w* a}].
struct SourceState {
    enum class Kind { single_photon, thermal, squeezed };
    Kind kind = Kind::thermal;
    InputMoments moments;

    static SourceState single_photon();
    static SourceState thermal(double mean);
    static SourceState squeezed(double mean, cd pair);
};

struct GibbsMode {
    double lambda;  // overlap eigenvalue
    double beta;    // ln(1 + 1/(mean_n * lambda))
};

// Output state in the many-source limit. F is the real symmetric 2d x 2d
// normally ordered covariance form in (x..x, p..p) ordering: its x block
// carries mean_n + Re pair. chi(z) = exp(-y^T F y) with the symplectically
// rotated y = (-Im z, Re z); isotropic moments cannot tell the orderings
// apart and F reduces to mean_n * Gamma embedded blockwise, the state then
// being a product of Gibbs modes (filled when mean_n > 0).
struct AsymptoticState {
    std::size_t d = 0;
    gram::GammaMatrix overlap;
    InputMoments moments;
    ComplexMatrix form;                 // F; entries have zero imaginary part
    std::vector<double> form_spectrum;  // descending
    std::vector<GibbsMode> gibbs;
};

// Assembles F from the overlap operator and the input moments and validates
// it is positive semidefinite (floor -1e-10). When the overlap is real the
// blocks are written exactly as tau ⊗ Gamma with
// tau = [[mean_n + Re pair, Im pair], [Im pair, mean_n - Re pair]].
AsymptoticState build_asymptotic(const gram::GammaMatrix& overlap,
                                 const InputMoments& moments);

cd char_fn_asymptotic(const AsymptoticState& state, std::span<const cd> z);

// chi of the exact n-source output state: product over sources i of the
// input chi at w_i = sum_u c_iu z_u / sqrt(n).
cd char_fn_finite(const gram::InternalFactor& factor, const SourceState& input,
                  std::span<const cd> z);

using CharFn = std::function<cd(std::span<const cd>)>;

// Self-contained handles (state captured by value; safe to call in parallel).
CharFn asymptotic_chi(AsymptoticState state);
CharFn finite_chi(gram::InternalFactor factor, SourceState input);

// Gauss-Hermite product-grid controls: `levels` = points per real axis in
// refinement order (at least two); accepted once the change between levels
// is within max(abs_tol, rel_tol * value).
struct QuadratureSpec {
    std::vector<std::size_t> levels{32, 64, 128};
    double rel_tol = 1e-6;
    double abs_tol = 1e-10;
    unsigned workers = 0;  // 0 = hardware default
};

struct PlancherelResult {
    double distance;
    double error_estimate;  // |last - previous| across refinement levels
    std::size_t level_used;
};

// Hilbert-Schmidt distance between the states behind two characteristic
// functions:
//   dist^2 = (1/pi^d) \int d^{2d}z e^{-|z|^2} |chi_a(z) - chi_b(z)|^2.
// Supports d <= 2; throws numeric_error if the levels do not converge.
PlancherelResult plancherel_distance(const CharFn& a, const CharFn& b,
                                     std::size_t d,
                                     const QuadratureSpec& spec = {});

struct ConvergenceRow {
    int n;
    double distance;
    double error_estimate;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    // log-log least-squares slope over rows with distance > 0; unset when
    // fewer than two such rows remain.
    std::optional<double> slope;
};

// Distance to `reference` for each source count in n_list; `family` builds
// the internal factor at a given n.
ConvergenceTable convergence_sweep(
    const std::function<gram::InternalFactor(int)>& family,
    const SourceState& input, const CharFn& reference, std::size_t d,
    const std::vector<int>& n_list, const QuadratureSpec& spec = {});

}  // namespace qclt::asymptotic
