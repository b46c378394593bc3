#pragma once

#include "biphoton/emitters.hpp"

#include <complex>
#include <string>

namespace biphoton {

using cd = std::complex<double>;

Vec3 direction(double theta, double phi);

enum class BasisLabel { XZ_AT_Y, TE_TM, SPHERICAL };

std::string to_string(BasisLabel label);
BasisLabel basis_label_from_string(const std::string& text);

struct PolarizationBasis {
    Vec3 e1;
    Vec3 e2;
    BasisLabel label;
};

// XZ_AT_Y: (x̂, ẑ), only at k̂ = ±ŷ.
// TE_TM: TE ⟂ plane(k̂, ŷ), TM in that plane; undefined at k̂ = ±ŷ.
// SPHERICAL: (−ê_θ, ê_φ) components of the spherical frame.
PolarizationBasis basis_for(double theta, double phi, BasisLabel label);

struct PhotonMode {
    double theta = 0;
    double phi = 0;
    double detuning = 0;  // ω − ω₀ in units of γ₀
    Vec3 pol = Vec3::UnitX();

    static PhotonMode along(double theta, double phi, double detuning, const Vec3& pol);

    Vec3 k_hat() const { return direction(theta, phi); }
    void validate() const;
};

// (μ̂_j·ê)·exp(−i k·r_j), with |k| = (1 + Δ/ω₀)·2πn in units of 1/λ₀.
cd projection(const EmitterPair& pair, const PhotonMode& mode, int which);
cd projection(const EmitterPair& pair, const Vec3& k_hat, double detuning, const Vec3& pol, int which);

}  // namespace biphoton
