#pragma once

#include "biphoton/emitters.hpp"
#include "biphoton/modes.hpp"

#include <Eigen/Core>
#include <array>
#include <limits>

namespace biphoton {

// Single-photon Lorentzians of one mode, with the field prefactor χ(ω) and the
// quantization volume stripped. s_zero/a_zero use the pair detuning sum.
struct LorentzBlock {
    cd s_plus, s_minus, a_plus, a_minus, s_zero, a_zero;
};

LorentzBlock lorentz_blocks(const EmitterPair& pair, const Couplings& c, const PhotonMode& mode,
                            double partner_detuning);

int einstein_weight(const PhotonMode& a, const PhotonMode& b);

struct ModePairAmplitude {
    cd value;
    PhotonMode mode_a;
    PhotonMode mode_b;
    int einstein = 1;
};

// Reduced steady-state two-photon amplitude c̃ = 𝒱·c_gg(∞)/(χ(ω)χ(ω')).
ModePairAmplitude cgg_steady(const EmitterPair& pair, const Couplings& c, const PhotonMode& a,
                             const PhotonMode& b);

// Closed-form c̃(t); tends to cgg_steady as t → ∞.
cd cgg_time_dependent(const EmitterPair& pair, const Couplings& c, const PhotonMode& a, const PhotonMode& b,
                      double t);

enum class WavenumberConvention {
    Medium,  // per unit (γ₀/c_medium) of each wavenumber
    ScaledN2 // Medium × n²
};

// k²χ²(ω)/(2π)³ in reduced units: (3π/2)(ω/ω₀)³/(2π)³. Detunings beyond ±clamp use the edge value.
double spectral_weight(const EmitterPair& pair, double detuning,
                       double clamp = std::numeric_limits<double>::infinity());

// Two-photon emission density per dΩ dΩ' dk dk'.
double probability_density(const EmitterPair& pair, const Couplings& c, const PhotonMode& a, const PhotonMode& b,
                           WavenumberConvention conv = WavenumberConvention::Medium);

// arg(c̃_xx) − arg(c̃_zz) at k̂ = ŷ, k̂' = −ŷ, wrapped to (−π, π].
double relative_phase(const EmitterPair& pair, const Couplings& c, double detuning, double detuning_prime);

// sin² of the angle between the dipole and the emission direction.
double dipole_radiation_pattern(const Vec3& orientation, double theta, double phi);

// Fast evaluation of the 2×2 amplitude matrix c̃[s][s'] for fixed directions and
// polarization pairs, at arbitrary detunings. Einstein weight is 1.
class PairKernel {
public:
    PairKernel(const EmitterPair& pair, const Couplings& c, const Vec3& k_a, const std::array<Vec3, 2>& pol_a,
               const Vec3& k_b, const std::array<Vec3, 2>& pol_b);

    Eigen::Matrix2cd operator()(double detuning_a, double detuning_b) const;

    const EmitterPair& pair() const { return pair_; }
    const Couplings& couplings() const { return c_; }

private:
    struct Side {
        std::array<double, 2> mu1_dot{};  // μ̂₁·ê_s
        std::array<double, 2> mu2_dot{};
        double kr1 = 0;  // k̂·r₁ · 2πn
        double kr2 = 0;
    };
    void numerators(const Side& side, double detuning, std::array<cd, 2>& sym, std::array<cd, 2>& anti) const;

    EmitterPair pair_;
    Couplings c_;
    Side a_, b_;
};

}  // namespace biphoton
