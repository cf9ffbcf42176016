#include "omabench/beam_fem.hpp"

#include "omabench/error.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace omabench {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << name << " must be positive and finite, got " << value;
        throw InvalidParameter(msg.str());
    }
}

}  // namespace

void Material::validate() const {
    require_positive(elastic_modulus, "elastic_modulus");
    require_positive(mass_density, "mass_density");
    if (!(poisson_ratio > 0.0 && poisson_ratio < 0.5)) {
        throw InvalidParameter("poisson_ratio must lie in (0, 0.5)");
    }
}

void BeamSection::validate() const {
    require_positive(width, "width");
    require_positive(height, "height");
}

void BeamModel::validate() const {
    material.validate();
    section.validate();
    require_positive(span_length, "span_length");
    if (n_elements < 1) {
        throw InvalidParameter("n_elements must be >= 1");
    }
}

std::string_view to_string(SupportCondition support) {
    switch (support) {
        case SupportCondition::CF: return "CF";
        case SupportCondition::SS: return "SS";
        case SupportCondition::CS: return "CS";
        case SupportCondition::CC: return "CC";
    }
    return "?";
}

SupportCondition parse_support(std::string_view text) {
    if (text == "CF") return SupportCondition::CF;
    if (text == "SS") return SupportCondition::SS;
    if (text == "CS") return SupportCondition::CS;
    if (text == "CC") return SupportCondition::CC;
    throw InvalidParameter("unknown support condition '" + std::string(text) + "'");
}

ElementMatrices element_matrices(double elastic_modulus, double second_moment, double mass_density,
                                 double area, double length) {
    require_positive(elastic_modulus, "elastic_modulus");
    require_positive(second_moment, "second_moment");
    require_positive(mass_density, "mass_density");
    require_positive(area, "area");
    require_positive(length, "length");

    const double L = length;
    const double L2 = L * L;
    const double k = elastic_modulus * second_moment / (L2 * L);
    const double m = mass_density * area * L / 420.0;

    ElementMatrices out;
    out.stiffness << 12.0, 6.0 * L, -12.0, 6.0 * L,
                     6.0 * L, 4.0 * L2, -6.0 * L, 2.0 * L2,
                     -12.0, -6.0 * L, 12.0, -6.0 * L,
                     6.0 * L, 2.0 * L2, -6.0 * L, 4.0 * L2;
    out.stiffness *= k;
    out.mass << 156.0, 22.0 * L, 54.0, -13.0 * L,
                22.0 * L, 4.0 * L2, 13.0 * L, -3.0 * L2,
                54.0, 13.0 * L, 156.0, -22.0 * L,
                -13.0 * L, -3.0 * L2, -22.0 * L, 4.0 * L2;
    out.mass *= m;
    return out;
}

std::vector<std::string> GlobalSystem::channel_labels() const {
    std::vector<std::string> labels;
    labels.reserve(channel_nodes.size());
    for (int node : channel_nodes) {
        labels.push_back(std::to_string(node));
    }
    return labels;
}

GlobalSystem assemble_model(const BeamModel& model) {
    model.validate();
    const int n_nodes = model.n_elements + 1;

    // Constraint flags per node: (translation fixed, rotation fixed).
    std::vector<std::pair<bool, bool>> fixed(n_nodes, {false, false});
    auto& left = fixed.front();
    auto& right = fixed.back();
    switch (model.support) {
        case SupportCondition::CF: left = {true, true}; break;
        case SupportCondition::SS: left.first = true; right.first = true; break;
        case SupportCondition::CS: left = {true, true}; right.first = true; break;
        case SupportCondition::CC: left = {true, true}; right = {true, true}; break;
    }

    GlobalSystem sys;
    sys.dof_map.resize(n_nodes);
    int next = 0;
    for (int i = 0; i < n_nodes; ++i) {
        if (!fixed[i].first) {
            sys.dof_map[i].translation = next++;
            sys.channel_dofs.push_back(sys.dof_map[i].translation);
            sys.channel_nodes.push_back(i + 1);
        }
        if (!fixed[i].second) {
            sys.dof_map[i].rotation = next++;
        }
    }
    if (sys.channel_dofs.empty()) {
        throw NoChannelsError("support condition leaves no free vertical translation");
    }

    sys.stiffness = Eigen::MatrixXd::Zero(next, next);
    sys.mass = Eigen::MatrixXd::Zero(next, next);
    const auto elem = element_matrices(model.material.elastic_modulus, model.section.second_moment(),
                                       model.material.mass_density, model.section.area(),
                                       model.element_length());
    for (int e = 0; e < model.n_elements; ++e) {
        const int map[4] = {sys.dof_map[e].translation, sys.dof_map[e].rotation,
                            sys.dof_map[e + 1].translation, sys.dof_map[e + 1].rotation};
        for (int a = 0; a < 4; ++a) {
            if (map[a] < 0) continue;
            for (int b = 0; b < 4; ++b) {
                if (map[b] < 0) continue;
                sys.stiffness(map[a], map[b]) += elem.stiffness(a, b);
                sys.mass(map[a], map[b]) += elem.mass(a, b);
            }
        }
    }
    return sys;
}

double ModalSolution::omega(Eigen::Index k) const {
    return 2.0 * std::numbers::pi * frequencies_hz(k);
}

ModalSolution modal_analysis(const GlobalSystem& system, int n_modes, double damping_ratio) {
    const Eigen::Index n = system.free_dofs();
    if (n_modes <= 0) n_modes = static_cast<int>(n);
    if (n_modes > n) {
        throw InvalidParameter("n_modes exceeds the number of free DOFs");
    }
    if (!(damping_ratio >= 0.0 && damping_ratio < 1.0)) {
        throw InvalidParameter("damping_ratio must lie in [0, 1)");
    }

    Eigen::LLT<Eigen::MatrixXd> mass_factor(system.mass);
    if (mass_factor.info() != Eigen::Success) {
        throw NumericalError("mass matrix is not positive definite");
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(system.stiffness, system.mass);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("generalized eigenproblem did not converge");
    }

    ModalSolution out;
    out.damping_ratio = damping_ratio;
    out.frequencies_hz.resize(n_modes);
    out.shapes = solver.eigenvectors().leftCols(n_modes);
    for (int k = 0; k < n_modes; ++k) {
        const double w2 = std::max(solver.eigenvalues()(k), 0.0);
        out.frequencies_hz(k) = std::sqrt(w2) / (2.0 * std::numbers::pi);

        double peak = 0.0;
        for (int dof : system.channel_dofs) {
            const double v = out.shapes(dof, k);
            if (std::abs(v) > std::abs(peak)) peak = v;
        }
        if (peak < 0.0) out.shapes.col(k) *= -1.0;
    }

    out.channel_shapes.resize(system.channels(), n_modes);
    for (Eigen::Index c = 0; c < system.channels(); ++c) {
        out.channel_shapes.row(c) = out.shapes.row(system.channel_dofs[c]);
    }
    return out;
}

namespace {

// Characteristic functions rescaled by exp(-lambda) so large roots stay finite.
double characteristic(SupportCondition support, double x) {
    const double e = std::exp(-2.0 * x);
    const double ch = 0.5 * (1.0 + e);   // cosh(x) * exp(-x)
    const double sh = 0.5 * (1.0 - e);   // sinh(x) * exp(-x)
    switch (support) {
        case SupportCondition::CF: return std::cos(x) * ch + std::exp(-x);
        case SupportCondition::CC: return std::cos(x) * ch - std::exp(-x);
        case SupportCondition::CS: return std::sin(x) * ch - std::cos(x) * sh;
        case SupportCondition::SS: return std::sin(x);
    }
    return 0.0;
}

}  // namespace

double characteristic_root(SupportCondition support, int k) {
    if (k < 1) throw InvalidParameter("mode number must be >= 1");
    const double pi = std::numbers::pi;
    if (support == SupportCondition::SS) return k * pi;

    double lo = 0.0;
    double hi = 0.0;
    switch (support) {
        case SupportCondition::CF: lo = (k - 1) * pi; hi = k * pi; break;
        case SupportCondition::CC: lo = k * pi; hi = (k + 1) * pi; break;
        case SupportCondition::CS: lo = k * pi; hi = (k + 0.5) * pi; break;
        case SupportCondition::SS: break;
    }
    if (lo == 0.0) lo = 1e-6;

    auto f = [support](double x) { return characteristic(support, x); };
    double flo = f(lo);
    double fhi = f(hi);
    if (flo * fhi > 0.0) {
        lo = std::max(1e-6, lo - 0.25 * pi);
        hi += 0.25 * pi;
        flo = f(lo);
        fhi = f(hi);
        if (flo * fhi > 0.0) {
            throw NumericalError("no sign change in characteristic equation bracket");
        }
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> analytical_frequencies(SupportCondition support, int n, const BeamModel& model) {
    if (n < 1) throw InvalidParameter("n must be >= 1");
    model.validate();
    const double L = model.span_length;
    const double c = std::sqrt(model.bending_stiffness() / model.mass_per_length()) /
                     (2.0 * std::numbers::pi * L * L);
    std::vector<double> out;
    out.reserve(n);
    for (int k = 1; k <= n; ++k) {
        const double lambda = characteristic_root(support, k);
        out.push_back(lambda * lambda * c);
    }
    return out;
}

double recording_duration(double frequency_hz, double damping_ratio) {
    require_positive(frequency_hz, "frequency_hz");
    require_positive(damping_ratio, "damping_ratio");
    return 1.0 / (frequency_hz * damping_ratio);
}

PiecewiseLinearSdof::PiecewiseLinearSdof(double omega, double damping_ratio, double dt)
    : omega_(omega), zeta_(damping_ratio), dt_(dt) {
    // Augmented state (u, v, p, p') with p' constant over the step.
    Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
    a(0, 1) = 1.0;
    a(1, 0) = -omega * omega;
    a(1, 1) = -2.0 * damping_ratio * omega;
    a(1, 2) = 1.0;
    a(2, 3) = 1.0;
    const Eigen::Matrix4d e = (a * dt).exp();
    transition_ = e.topLeftCorner<2, 2>();
    load_now_ = e.block<2, 1>(0, 2);
    load_slope_ = e.block<2, 1>(0, 3);
}

void PiecewiseLinearSdof::step(double p_now, double p_next) {
    const Eigen::Vector2d x(u_, v_);
    const Eigen::Vector2d next =
        transition_ * x + load_now_ * p_now + load_slope_ * ((p_next - p_now) / dt_);
    u_ = next(0);
    v_ = next(1);
}

double PiecewiseLinearSdof::acceleration(double p) const {
    return p - 2.0 * zeta_ * omega_ * v_ - omega_ * omega_ * u_;
}

MultiChannelRecord transient_response(const GlobalSystem& system, const ModalSolution& modal,
                                      const MultiChannelRecord& forces, double dt, double duration) {
    require_positive(dt, "dt");
    require_positive(duration, "duration");
    if (forces.channels() != system.channels()) {
        throw InvalidInput("force record has " + std::to_string(forces.channels()) +
                           " channels, model has " + std::to_string(system.channels()));
    }
    if (std::abs(forces.sample_rate() * dt - 1.0) > 1e-9) {
        throw InvalidInput("force sample rate must equal 1 / dt");
    }
    const auto n_samples = static_cast<Eigen::Index>(std::llround(duration / dt)) + 1;
    if (forces.samples() < n_samples) {
        throw InvalidInput("force record shorter than the requested duration");
    }
    if (modal.channel_shapes.rows() != system.channels()) {
        throw InvalidInput("modal solution does not match the system channels");
    }

    const Eigen::Index n_modes = modal.modes();
    // Modal loads: p_k(t) = sum_c phi_{c,k} F_c(t).
    const RowMatrix modal_forces =
        modal.channel_shapes.transpose() * forces.data().leftCols(n_samples);

    RowMatrix modal_accel(n_modes, n_samples);
    for (Eigen::Index k = 0; k < n_modes; ++k) {
        PiecewiseLinearSdof sdof(modal.omega(k), modal.damping_ratio, dt);
        const auto p = modal_forces.row(k);
        modal_accel(k, 0) = sdof.acceleration(p(0));
        for (Eigen::Index i = 1; i < n_samples; ++i) {
            sdof.step(p(i - 1), p(i));
            modal_accel(k, i) = sdof.acceleration(p(i));
        }
    }

    RowMatrix accel = modal.channel_shapes * modal_accel;
    return MultiChannelRecord(1.0 / dt, std::move(accel), system.channel_labels());
}

}  // namespace omabench
