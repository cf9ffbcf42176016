#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace omabench {

enum class Method { PP, FDD, SSI };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

struct IdentifiedMode {
    double frequency_hz = 0.0;
    Eigen::VectorXd shape;           // one entry per channel, max |entry| = 1
    std::optional<double> damping;   // SSI only
    double quality = 0.0;            // peak height (PP/FDD) or stable-pole count (SSI)
};

struct IdentifiedModeSet {
    Method method = Method::PP;
    std::vector<IdentifiedMode> modes;  // ascending in frequency
    std::vector<std::string> diagnostics;
};

/// Scale so the largest-magnitude entry becomes +1. Zero vectors are returned unchanged.
Eigen::VectorXd unit_normalize(const Eigen::VectorXd& shape);

/// Rotate a complex shape to its dominant real direction and keep the real part.
Eigen::VectorXd real_aligned(const Eigen::VectorXcd& shape);

}  // namespace omabench
