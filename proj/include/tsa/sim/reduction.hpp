#pragma once

#include <vector>

#include "tsa/grid/network.hpp"

namespace tsa::sim {

using grid::Complex;
using grid::ComplexMatrix;

/// Kron reduction: eliminates every node not in `keep`, preserving port
/// behavior at the kept nodes. Throws NumericalError when the eliminated
/// block is singular.
ComplexMatrix kron_reduce(const ComplexMatrix& y_full, const std::vector<std::size_t>& keep);

}  // namespace tsa::sim
