#include "omabench/identified_modes.hpp"

#include "omabench/error.hpp"

#include <cmath>
#include <complex>

namespace omabench {

std::string_view to_string(Method method) {
    switch (method) {
        case Method::PP: return "PP";
        case Method::FDD: return "FDD";
        case Method::SSI: return "SSI";
    }
    return "?";
}

Method parse_method(std::string_view text) {
    if (text == "PP" || text == "pp") return Method::PP;
    if (text == "FDD" || text == "fdd") return Method::FDD;
    if (text == "SSI" || text == "ssi") return Method::SSI;
    throw InvalidParameter("unknown method '" + std::string(text) + "'");
}

Eigen::VectorXd unit_normalize(const Eigen::VectorXd& shape) {
    double peak = 0.0;
    for (double v : shape) {
        if (std::abs(v) > std::abs(peak)) peak = v;
    }
    if (peak == 0.0) return shape;
    return shape / peak;
}

Eigen::VectorXd real_aligned(const Eigen::VectorXcd& shape) {
    // Maximizing sum Re(e^{-i a} z_j)^2 gives a = arg(sum z_j^2) / 2.
    const std::complex<double> s = (shape.array() * shape.array()).sum();
    const double angle = 0.5 * std::arg(s);
    const Eigen::VectorXcd rotated = shape * std::polar(1.0, -angle);
    return rotated.real();
}

}  // namespace omabench
