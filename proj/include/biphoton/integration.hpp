#pragma once

#include "biphoton/amplitudes.hpp"
#include "biphoton/emitters.hpp"
#include "biphoton/quadrature.hpp"

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

namespace biphoton {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 0;
    double window_halfwidth = 0;  // 0 selects 50·max(γ₀, |V|, Γ)
    int max_subdivisions = 4000;
    bool tails = true;            // integrate beyond ±W through mapped tails

    void validate() const;
    // Effective half-window for integrands with coupling V and filter width Γ.
    double window_for(double V, double gamma_filter = 0) const;
    quad::Tolerance tolerance() const { return {rel_tol, abs_tol, max_subdivisions}; }
};

struct Estimate {
    double value = 0;
    double error = 0;
    bool converged = true;
    long evaluations = 0;
};

// ∫ f(Δ) dΔ over the whole line (or [−W, W] when spec.tails is false).
Estimate integrate_1d(const std::function<double(double)>& f, const QuadratureSpec& spec,
                      const std::vector<double>& breakpoints = {});

// D(θ,φ;θ',φ') = ∬ dΔ dΔ' Σ_{s,s'} P, polarizations summed in `basis`.
Estimate angular_density(const EmitterPair& pair, const Couplings& c, double theta, double phi, double theta_p,
                         double phi_p, const QuadratureSpec& spec, BasisLabel basis = BasisLabel::SPHERICAL);

struct AngularDensityGrid {
    double theta = 0, phi = 0;
    std::vector<double> theta_p, phi_p;
    Eigen::MatrixXd values;  // values(i, j) at (theta_p[i], phi_p[j])
    QuadratureSpec spec;
    bool converged = true;
};

AngularDensityGrid angular_density_grid(const EmitterPair& pair, const Couplings& c, double theta, double phi,
                                        const std::vector<double>& theta_p, const std::vector<double>& phi_p,
                                        const QuadratureSpec& spec);

struct NormalizationEstimate {
    double integral = 0;         // ∬dΩdΩ' ∬dΔdΔ' Σ P over ordered mode pairs
    double std_error = 0;
    double pair_probability = 0; // integral / 2: each unordered pair is counted once in ⟨ψ|ψ⟩
    double pair_std_error = 0;
    long n_samples = 0;
    std::uint64_t seed = 0;
};

// Importance-sampled Monte-Carlo estimate. Deterministic in (seed, n_samples) for any
// thread count: samples are drawn from a counter-based stream and reduced in block order.
NormalizationEstimate total_normalization(const EmitterPair& pair, const Couplings& c, long n_samples,
                                          std::uint64_t seed, double window_halfwidth = 0);

// Uniform double in (0, 1) from the counter (seed, index, stream).
double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint32_t stream);

}  // namespace biphoton
