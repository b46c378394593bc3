#pragma once

#include <Eigen/Core>
#include <istream>
#include <string>

namespace biphoton {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;

struct PhysicalPreset {
    std::string name = "dbatt";
    double gamma0_hz = 21.5e6;         // γ₀/(2π)
    double lambda0_vac = 618e-9;       // metres
    double refractive_index = 1.5;
    double alpha_dw = 1.0;

    static PhysicalPreset dbatt() { return {}; }

    // ω₀/γ₀ = (c/λ₀)/(γ₀/2π); both numerator and denominator carry the same 2π.
    double omega0_over_gamma0() const { return kSpeedOfLight / lambda0_vac / gamma0_hz; }

    void validate() const;
};

// Parses "key = value" lines (gamma0_hz, lambda0_nm, n, alpha_dw, name) on top of `base`.
// Blank lines and lines starting with '#' are skipped. Unknown keys throw DomainError.
PhysicalPreset load_preset(std::istream& in, PhysicalPreset base = PhysicalPreset::dbatt());

PhysicalPreset preset_by_name(const std::string& name);

// Two emitters at origin ± (r12/2)ẑ with dipoles (cos α_j, 0, sin α_j).
// Frequencies are in units of γ₀, lengths in units of the vacuum wavelength λ₀.
struct EmitterPair {
    double alpha1 = kPi / 4;
    double alpha2 = -kPi / 4;
    double r12 = 0.05;
    double omega0_over_gamma0 = PhysicalPreset{}.omega0_over_gamma0();
    double alpha_dw = 1.0;
    double refractive_index = 1.5;
    Vec3 origin = Vec3::Zero();

    static EmitterPair perpendicular(double r12, const PhysicalPreset& preset = PhysicalPreset::dbatt());

    // k₀r₁₂ with k₀ = 2πn/λ₀.
    double k0_r12() const { return 2.0 * kPi * refractive_index * r12; }
    Vec3 dipole(int which) const;
    Vec3 position(int which) const;
    void validate() const;
};

struct Couplings {
    double V = 0;
    double gamma12 = 0;
    double omega_plus = 0;   // ω₀ + V
    double omega_minus = 0;  // ω₀ − V
    double rate_plus = 1;    // γ₀ + γ₁₂
    double rate_minus = 1;   // γ₀ − γ₁₂
};

double coherent_coupling(const EmitterPair& pair);
double dissipative_coupling(const EmitterPair& pair);
Couplings hybrid_levels(const EmitterPair& pair);

// Separation r12' for which α_dw_new reproduces the current V. Searches r12' ∈ [1e-4, 10].
double rescale_r12_for_fixed_V(const EmitterPair& pair, double alpha_dw_new);

}  // namespace biphoton
