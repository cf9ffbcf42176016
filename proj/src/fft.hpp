#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>

namespace omabench::detail {

/// Forward real-to-complex DFT, unnormalized, returning n / 2 + 1 bins.
Eigen::VectorXcd real_forward(std::span<const double> input);

/// Inverse complex-to-real DFT of n / 2 + 1 bins into n samples, unnormalized.
Eigen::VectorXd real_inverse(const Eigen::VectorXcd& bins, Eigen::Index n);

}  // namespace omabench::detail
