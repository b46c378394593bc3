#include "biphoton/modes.hpp"

#include "biphoton/errors.hpp"

#include <cmath>

namespace biphoton {

Vec3 direction(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::string to_string(BasisLabel label) {
    switch (label) {
        case BasisLabel::XZ_AT_Y: return "XZ_AT_Y";
        case BasisLabel::TE_TM: return "TE_TM";
        case BasisLabel::SPHERICAL: return "SPHERICAL";
    }
    return "?";
}

BasisLabel basis_label_from_string(const std::string& text) {
    if (text == "XZ_AT_Y" || text == "xz") return BasisLabel::XZ_AT_Y;
    if (text == "TE_TM" || text == "tetm") return BasisLabel::TE_TM;
    if (text == "SPHERICAL" || text == "spherical") return BasisLabel::SPHERICAL;
    throw DomainError("unknown polarization basis '" + text + "'");
}

PolarizationBasis basis_for(double theta, double phi, BasisLabel label) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double sp = std::sin(phi), cp = std::cos(phi);
    switch (label) {
        case BasisLabel::XZ_AT_Y: {
            if (std::abs(std::abs(st * sp) - 1.0) > 1e-12)
                throw DomainError("XZ_AT_Y basis requires k along +y or -y");
            return {Vec3::UnitX(), Vec3::UnitZ(), label};
        }
        case BasisLabel::TE_TM: {
            const double nu2 = ct * ct + st * st * cp * cp;
            if (nu2 < 1e-24) throw DomainError("TE_TM basis is degenerate at k = +-y; use XZ_AT_Y");
            const Vec3 te = Vec3(ct, 0.0, -st * cp).normalized();
            const Vec3 tm = Vec3(st * st * cp * sp, -nu2, st * ct * sp).normalized();
            return {te, tm, label};
        }
        case BasisLabel::SPHERICAL:
            return {Vec3(-ct * cp, -ct * sp, st), Vec3(sp, -cp, 0.0), label};
    }
    throw DomainError("invalid basis label");
}

PhotonMode PhotonMode::along(double theta, double phi, double detuning, const Vec3& pol) {
    PhotonMode m{theta, phi, detuning, pol};
    m.validate();
    return m;
}

void PhotonMode::validate() const {
    if (!std::isfinite(theta) || !std::isfinite(phi) || !std::isfinite(detuning))
        throw DomainError("photon mode has non-finite angle or frequency");
    if (std::abs(pol.norm() - 1.0) > 1e-12) throw DomainError("polarization vector must be a unit vector");
    if (std::abs(pol.dot(k_hat())) > 1e-12) throw DomainError("polarization vector must be transverse to k");
}

cd projection(const EmitterPair& pair, const Vec3& k_hat, double detuning, const Vec3& pol, int which) {
    const double k = (1.0 + detuning / pair.omega0_over_gamma0) * 2.0 * kPi * pair.refractive_index;
    const double phase = k * k_hat.dot(pair.position(which));
    return pair.dipole(which).dot(pol) * std::polar(1.0, -phase);
}

cd projection(const EmitterPair& pair, const PhotonMode& mode, int which) {
    return projection(pair, mode.k_hat(), mode.detuning, mode.pol, which);
}

}  // namespace biphoton
