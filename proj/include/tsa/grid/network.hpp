#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

#include "tsa/grid/types.hpp"

namespace tsa::grid {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Bus admittance matrix with the given branch in-service mask (length =
/// branch count). Shunts and line charging are included; the result is
/// symmetric because the model has no phase shifters.
ComplexMatrix build_ybus(const GridCase& gcase, const std::vector<bool>& in_service);

/// Convenience overload: every branch with status InService.
ComplexMatrix build_ybus(const GridCase& gcase);

/// Mask derived from branch status fields.
std::vector<bool> service_mask(const GridCase& gcase);

/// From-end (P, Q) of every branch under the given bus voltages, standard
/// pi-model. Out-of-service branches report (0, 0).
std::vector<std::pair<double, double>> branch_flows(const GridCase& gcase,
                                                    const std::vector<double>& v_mag,
                                                    const std::vector<double>& v_ang,
                                                    const std::vector<bool>& in_service);

}  // namespace tsa::grid
