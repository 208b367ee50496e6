#include "qclt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "qclt/errors.hpp"
#include "qclt/linalg.hpp"

namespace qclt::quad {
namespace {

constexpr std::size_t kMaxPoints = 512;
constexpr std::size_t kBlockCount = 256;  // fixed reduction fan-in, see header

// Jacobi matrix -> nodes (eigenvalues). Eigenvector-derived weights bottom out
// at the solver noise floor (~1e-30) long before the true far-node weights do,
// so the weights are recomputed from the nodes instead; see below.
std::vector<double> jacobi_nodes(const std::vector<double>& diag,
                                 const std::vector<double>& off) {
    const std::size_t k = diag.size();
    linalg::ComplexMatrix j(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        j(i, i) = diag[i];
        if (i + 1 < k) {
            j(i, i + 1) = off[i];
            j(i + 1, i) = off[i];
        }
    }
    const auto eig = linalg::eig_hermitian(j);
    // eig_hermitian sorts descending; emit ascending nodes.
    std::vector<double> nodes(k);
    for (std::size_t i = 0; i < k; ++i) nodes[i] = eig.values[k - 1 - i];
    return nodes;
}

Rule make_hermite(std::size_t points) {
    std::vector<double> diag(points, 0.0);
    std::vector<double> off(points > 0 ? points - 1 : 0);
    for (std::size_t i = 0; i + 1 < points; ++i) off[i] = std::sqrt((i + 1) / 2.0);
    Rule rule;
    rule.nodes = jacobi_nodes(diag, off);
    rule.weights.resize(points);
    // Christoffel identity: 1/w at a node is sum_{k<K} p_k(x)^2 over the
    // orthonormal polynomials of the measure. Running the recurrence on the
    // scaled values q_k = e^{-x^2/2} p_k keeps every term bounded, so even a
    // weight near 1e-200 comes out with full relative accuracy.
    const double root_pi = std::sqrt(std::acos(-1.0));
    for (std::size_t i = 0; i < points; ++i) {
        const double x = rule.nodes[i];
        const double gauss = std::exp(-x * x);
        if (gauss == 0.0) {
            rule.weights[i] = 0.0;  // below DBL_MIN, honest zero
            continue;
        }
        double prev = 0.0;
        double cur = std::exp(-0.5 * x * x) / std::sqrt(root_pi);
        double sum = cur * cur;
        for (std::size_t m = 0; m + 1 < points; ++m) {
            const double next = x * std::sqrt(2.0 / double(m + 1)) * cur -
                                std::sqrt(double(m) / double(m + 1)) * prev;
            prev = cur;
            cur = next;
            sum += cur * cur;
        }
        rule.weights[i] = gauss / sum;
    }
    return rule;
}

Rule make_laguerre(std::size_t points) {
    std::vector<double> diag(points);
    std::vector<double> off(points > 0 ? points - 1 : 0);
    for (std::size_t i = 0; i < points; ++i) diag[i] = 2.0 * i + 1.0;
    for (std::size_t i = 0; i + 1 < points; ++i) off[i] = i + 1.0;
    Rule rule;
    rule.nodes = jacobi_nodes(diag, off);
    rule.weights.resize(points);
    // Same Christoffel route as make_hermite, with l_k = e^{-t/2} L_k.
    for (std::size_t i = 0; i < points; ++i) {
        const double t = rule.nodes[i];
        const double gauss = std::exp(-t);
        if (gauss == 0.0) {
            rule.weights[i] = 0.0;
            continue;
        }
        double prev = 0.0;
        double cur = std::exp(-0.5 * t);
        double sum = cur * cur;
        for (std::size_t m = 0; m + 1 < points; ++m) {
            const double next =
                ((2.0 * double(m) + 1.0 - t) * cur - double(m) * prev) /
                double(m + 1);
            prev = cur;
            cur = next;
            sum += cur * cur;
        }
        rule.weights[i] = gauss / sum;
    }
    return rule;
}

const Rule& cached(std::map<std::size_t, Rule>& cache, std::mutex& lock,
                   std::size_t points, Rule (*make)(std::size_t)) {
    if (points == 0 || points > kMaxPoints)
        throw std::invalid_argument("quadrature rule size must be in [1, " +
                                    std::to_string(kMaxPoints) + "], got " +
                                    std::to_string(points));
    std::lock_guard<std::mutex> guard(lock);
    auto it = cache.find(points);
    if (it == cache.end()) it = cache.emplace(points, make(points)).first;
    return it->second;
}

// Pairwise reduction of f over [lo, hi); tree shape fixed by the index range.
double reduce_range(std::size_t lo, std::size_t hi,
                    const std::function<double(std::size_t)>& f) {
    const std::size_t len = hi - lo;
    if (len <= 16) {
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += f(i);
        return acc;
    }
    const std::size_t mid = lo + len / 2;
    return reduce_range(lo, mid, f) + reduce_range(mid, hi, f);
}

}  // namespace

const Rule& gauss_hermite(std::size_t points) {
    static std::map<std::size_t, Rule> cache;
    static std::mutex lock;
    return cached(cache, lock, points, make_hermite);
}

const Rule& gauss_laguerre(std::size_t points) {
    static std::map<std::size_t, Rule> cache;
    static std::mutex lock;
    return cached(cache, lock, points, make_laguerre);
}

double reduce_indexed(std::size_t count, unsigned workers,
                      const std::function<double(std::size_t)>& f) {
    if (count == 0) return 0.0;
    if (workers == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        workers = hw == 0 ? 1 : std::min(hw, 8u);
    }
    const std::size_t blocks = std::min(count, kBlockCount);
    std::vector<double> partial(blocks);
    // Block b covers [b*count/blocks, (b+1)*count/blocks); the partition is a
    // function of count alone, so worker count never changes the result.
    const auto run_block = [&](std::size_t b) {
        partial[b] = reduce_range(b * count / blocks, (b + 1) * count / blocks, f);
    };
    if (workers <= 1 || blocks == 1) {
        for (std::size_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        const unsigned active = static_cast<unsigned>(
            std::min<std::size_t>(workers, blocks));
        pool.reserve(active);
        for (unsigned w = 0; w < active; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t b = w; b < blocks; b += active) run_block(b);
            });
        }
        for (auto& t : pool) t.join();
    }
    return reduce_range(0, blocks, [&](std::size_t b) { return partial[b]; });
}

}  // namespace qclt::quad
