#pragma once

#include "omabench/dsp.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace omabench {

struct Material {
    double elastic_modulus = 2.0e11;  // Pa
    double mass_density = 7850.0;     // kg/m^3
    double poisson_ratio = 0.3;

    void validate() const;
};

struct BeamSection {
    double width = 0.01;   // m
    double height = 0.01;  // m

    double area() const { return width * height; }
    double second_moment() const { return width * height * height * height / 12.0; }
    void validate() const;
};

/// Support condition at the two beam ends (left, right).
enum class SupportCondition { CF, SS, CS, CC };

std::string_view to_string(SupportCondition support);
SupportCondition parse_support(std::string_view text);

struct BeamModel {
    Material material;
    BeamSection section;
    double span_length = 1.0;  // m
    int n_elements = 10;
    SupportCondition support = SupportCondition::CF;

    double element_length() const { return span_length / n_elements; }
    double bending_stiffness() const { return material.elastic_modulus * section.second_moment(); }
    double mass_per_length() const { return material.mass_density * section.area(); }
    void validate() const;
};

struct ElementMatrices {
    Eigen::Matrix4d stiffness;
    Eigen::Matrix4d mass;
};

/// Hermite-cubic Euler-Bernoulli element with consistent mass, DOF order (v1, t1, v2, t2).
ElementMatrices element_matrices(double elastic_modulus, double second_moment, double mass_density,
                                 double area, double length);

/// Index of a nodal DOF in the reduced system, or -1 when constrained.
struct NodeDofs {
    int translation = -1;
    int rotation = -1;
};

struct GlobalSystem {
    Eigen::MatrixXd stiffness;
    Eigen::MatrixXd mass;
    std::vector<NodeDofs> dof_map;     // one entry per node, node i has id i + 1
    std::vector<int> channel_dofs;     // free vertical translations ordered by node
    std::vector<int> channel_nodes;    // node ids (1-based) of the channels

    Eigen::Index free_dofs() const { return stiffness.rows(); }
    Eigen::Index channels() const { return static_cast<Eigen::Index>(channel_dofs.size()); }
    std::vector<std::string> channel_labels() const;
};

/// Assemble and reduce the global matrices. Throws NoChannelsError when no
/// vertical translation survives the supports.
GlobalSystem assemble_model(const BeamModel& model);

struct ModalSolution {
    Eigen::VectorXd frequencies_hz;   // ascending
    Eigen::MatrixXd shapes;           // free DOFs x modes, mass-normalized
    Eigen::MatrixXd channel_shapes;   // channels x modes (rows of `shapes`)
    double damping_ratio = 0.025;

    Eigen::Index modes() const { return frequencies_hz.size(); }
    double omega(Eigen::Index k) const;
};

/// Lowest `n_modes` of K phi = w^2 M phi. `n_modes <= 0` returns every mode.
ModalSolution modal_analysis(const GlobalSystem& system, int n_modes, double damping_ratio = 0.025);

/// Closed-form Euler-Bernoulli natural frequencies in Hz for the first `n` modes.
std::vector<double> analytical_frequencies(SupportCondition support, int n, const BeamModel& model);

/// Eigenvalue parameter lambda_k of the support's characteristic equation.
double characteristic_root(SupportCondition support, int k);

/// Recording length 1 / (f_k * zeta) in seconds, frequency taken in Hz.
double recording_duration(double frequency_hz, double damping_ratio);

/// Single-DOF oscillator (unit mass) advanced exactly under linearly varying load.
class PiecewiseLinearSdof {
public:
    PiecewiseLinearSdof(double omega, double damping_ratio, double dt);

    void step(double p_now, double p_next);
    double acceleration(double p) const;
    double displacement() const { return u_; }
    double velocity() const { return v_; }
    void reset(double u, double v) { u_ = u; v_ = v; }

private:
    double omega_;
    double zeta_;
    double dt_;
    double u_ = 0.0;
    double v_ = 0.0;
    Eigen::Matrix2d transition_;
    Eigen::Vector2d load_now_;
    Eigen::Vector2d load_slope_;
};

/**
 * Absolute accelerations at the measurement channels by modal superposition.
 *
 * Every mode in `modal` participates with damping `modal.damping_ratio`. Each
 * modal SDOF is advanced by the exact recurrence for piecewise-linear loading.
 * Output has round(duration / dt) + 1 samples at rate 1 / dt.
 */
MultiChannelRecord transient_response(const GlobalSystem& system, const ModalSolution& modal,
                                      const MultiChannelRecord& forces, double dt, double duration);

}  // namespace omabench
