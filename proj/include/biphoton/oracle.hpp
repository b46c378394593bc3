#pragma once

#include "biphoton/amplitudes.hpp"

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

namespace biphoton {

struct OdeOptions {
    double tolerance = 1e-10;  // local, mixed absolute/relative
    double initial_step = 1e-3;
    double min_step = 1e-13;
    long max_steps = 10'000'000;
};

// Dormand–Prince 5(4) with adaptive steps. observe(t, y) is called at t0 and after every accepted step.
struct OdeStats {
    long accepted = 0;
    long rejected = 0;
};
using ComplexRhs = std::function<void(double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dydt)>;
OdeStats integrate_dopri(const ComplexRhs& rhs, double t0, double t1, Eigen::VectorXcd& y, const OdeOptions& opt,
                         const std::function<void(double, const Eigen::VectorXcd&)>& observe = {});

// Single-photon amplitudes for one mode, with the field prefactor χ(ω) stripped.
struct AmplitudeTrajectory {
    std::vector<double> times;
    std::vector<cd> c_ee, c_eg, c_ge;
    PhotonMode mode;
};

AmplitudeTrajectory integrate_single_photon(const EmitterPair& pair, const Couplings& c, const PhotonMode& mode,
                                            double t_end, const OdeOptions& opt = {});

struct SinglePhotonAmplitudes {
    cd c_eg, c_ge;
};

// Closed-form solution of the single-photon system.
SinglePhotonAmplitudes single_photon_analytic(const EmitterPair& pair, const Couplings& c, const PhotonMode& mode,
                                              double t);

struct CggLimitReport {
    cd time_domain;
    cd steady;
    double t_end = 0;
    double relative_deviation = 0;
    double absolute_deviation = 0;
    long steps = 0;
};

// Integrates the single-photon amplitudes of both modes together with the two-photon
// source integral up to t_end and compares with cgg_steady.
CggLimitReport verify_cgg_limit(const EmitterPair& pair, const Couplings& c, const PhotonMode& a, const PhotonMode& b,
                                double t_end = 50.0, const OdeOptions& opt = {});

}  // namespace biphoton

namespace biphoton {

// Reproducible random mode: uniform direction, uniform polarization angle in the
// spherical transverse basis, detuning uniform in [−max_detuning, max_detuning].
PhotonMode sample_mode(std::uint64_t seed, std::uint64_t index, double max_detuning);

}  // namespace biphoton
