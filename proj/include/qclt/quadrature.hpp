#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qclt::quad {

struct Rule {
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;  // positive
};

// Nodes and weights from the symmetric tridiagonal recurrence matrix
// (Golub-Welsch). Rules are cached per point count.
const Rule& gauss_hermite(std::size_t points);   // weight e^{-t^2} on R
const Rule& gauss_laguerre(std::size_t points);  // weight e^{-t} on [0, inf)

// Sum of f(0..count-1) over a fixed reduction tree: 256 index blocks, each
// reduced pairwise, block results reduced pairwise. The tree depends only on
// count, so the result is bit-identical for any worker count (workers = 0
// picks a hardware-based default).
double reduce_indexed(std::size_t count, unsigned workers,
                      const std::function<double(std::size_t)>& f);

}  // namespace qclt::quad
