#pragma once

#include "biphoton/amplitudes.hpp"
#include "biphoton/integration.hpp"

#include <Eigen/Core>
#include <array>

namespace biphoton {

// Lorentzian filters; centres are detunings from ω₀ in units of γ₀.
struct FilterPair {
    double gamma_filter = 1e-2;
    double center_a = 0;
    double center_b = 0;

    // Alice at ω₊ = ω₀ + V, Bob at ω₋ = ω₀ − V.
    static FilterPair at_hybrid_lines(const Couplings& c, double gamma_filter);
    void validate() const;
};

// (Γ/2)/((Γ/2) + i(Δ − centre)).
cd filter_profile(double detuning, double center, double gamma_filter);

struct LensRotation {
    Eigen::Matrix2d r;     // (TE, TM) amplitudes → (x̂, ẑ) amplitudes
    bool on_axis = false;  // k̂ = ŷ, where r is the identity
};

LensRotation lens_rotation(double theta, double phi);

// A detection direction and the two polarization vectors whose amplitudes are
// reported as the detector's "x" and "z" outcomes.
struct DetectorArm {
    double theta = kPi / 2;
    double phi = kPi / 2;
    std::array<Vec3, 2> pol{Vec3::UnitX(), Vec3::UnitZ()};

    static DetectorArm on_axis_plus_y();
    static DetectorArm on_axis_minus_y();
    // Off-axis detection through a lens normal to ŷ: TE/TM amplitudes rotated into (x̂, ẑ).
    static DetectorArm with_lens(double theta, double phi);
};

struct PolarizationDensityMatrix {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();  // basis (xx, xz, zx, zz); Alice first
    double n_factor = 0;                            // trace before normalization
    double quad_error = 0;                          // absolute error estimate of the unnormalized integrals
    bool converged = true;
    long evaluations = 0;
};

PolarizationDensityMatrix tomography(const EmitterPair& pair, const Couplings& c, const FilterPair& filters,
                                     const DetectorArm& alice, const DetectorArm& bob, const QuadratureSpec& spec);

// Hermitian to 1e-10, unit trace to 1e-10, eigenvalues ≥ −1e-10; throws NumericalError otherwise.
void check_density_matrix(const Eigen::Matrix4cd& rho);

double concurrence(const Eigen::Matrix4cd& rho);
double fidelity(const Eigen::Matrix4cd& rho);            // ⟨ψ⁻|ρ|ψ⁻⟩²
double fidelity_unsquared(const Eigen::Matrix4cd& rho);  // ⟨ψ⁻|ρ|ψ⁻⟩
double purity(const Eigen::Matrix4cd& rho);

// (|xx⟩ − |zz⟩)/√2
Eigen::Vector4cd bell_minus();

}  // namespace biphoton
