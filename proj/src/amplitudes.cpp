#include "biphoton/amplitudes.hpp"

#include "biphoton/errors.hpp"

#include <algorithm>
#include <cmath>

namespace biphoton {

namespace {

constexpr cd I(0.0, 1.0);

cd denom_plus(const Couplings& c, double d) { return cd(0.5 * c.rate_plus, c.V - d); }
cd denom_minus(const Couplings& c, double d) { return cd(0.5 * c.rate_minus, -c.V - d); }
cd denom_zero(double d, double dp) { return cd(1.0, -(d + dp)); }

}  // namespace

LorentzBlock lorentz_blocks(const EmitterPair& pair, const Couplings& c, const PhotonMode& mode,
                            double partner_detuning) {
    const cd p1 = projection(pair, mode, 1);
    const cd p2 = projection(pair, mode, 2);
    const cd sym = I * (p1 + p2);
    const cd anti = I * (p1 - p2);
    const cd dp = denom_plus(c, mode.detuning);
    const cd dm = denom_minus(c, mode.detuning);
    const cd d0 = denom_zero(mode.detuning, partner_detuning);
    return {sym / dp, sym / dm, anti / dp, anti / dm, sym / d0, anti / d0};
}

int einstein_weight(const PhotonMode& a, const PhotonMode& b) {
    const bool same = a.theta == b.theta && a.phi == b.phi && a.detuning == b.detuning && a.pol == b.pol;
    return same ? 2 : 1;
}

ModePairAmplitude cgg_steady(const EmitterPair& pair, const Couplings& c, const PhotonMode& a,
                             const PhotonMode& b) {
    const LorentzBlock k = lorentz_blocks(pair, c, a, b.detuning);
    const LorentzBlock kp = lorentz_blocks(pair, c, b, a.detuning);
    const int eps = einstein_weight(a, b);
    const cd sym = k.s_minus * (kp.s_plus - kp.s_zero) + kp.s_minus * (k.s_plus - k.s_zero);
    const cd anti = k.a_plus * (kp.a_minus - kp.a_zero) + kp.a_plus * (k.a_minus - k.a_zero);
    return {(anti - sym) / (2.0 * eps), a, b, eps};
}

cd cgg_time_dependent(const EmitterPair& pair, const Couplings& c, const PhotonMode& a, const PhotonMode& b,
                      double t) {
    if (!(t >= 0)) throw DomainError("time must be non-negative");
    const LorentzBlock k = lorentz_blocks(pair, c, a, b.detuning);
    const LorentzBlock kp = lorentz_blocks(pair, c, b, a.detuning);
    const int eps = einstein_weight(a, b);
    auto rise = [t](cd rate) { return 1.0 - std::exp(-rate * t); };
    const cd sum = -rise(denom_plus(c, b.detuning)) * k.s_minus * kp.s_plus -
                   rise(denom_plus(c, a.detuning)) * kp.s_minus * k.s_plus +
                   rise(denom_minus(c, b.detuning)) * k.a_plus * kp.a_minus +
                   rise(denom_minus(c, a.detuning)) * kp.a_plus * k.a_minus +
                   rise(denom_zero(a.detuning, b.detuning)) *
                       (k.s_minus * kp.s_zero + kp.s_minus * k.s_zero - k.a_plus * kp.a_zero - kp.a_plus * k.a_zero);
    return sum / (2.0 * eps);
}

double spectral_weight(const EmitterPair& pair, double detuning, double clamp) {
    const double d = std::clamp(detuning, -clamp, clamp);
    const double ratio = 1.0 + d / pair.omega0_over_gamma0;
    constexpr double two_pi_cubed = 8.0 * kPi * kPi * kPi;
    return 1.5 * kPi * ratio * ratio * ratio / two_pi_cubed;
}

double probability_density(const EmitterPair& pair, const Couplings& c, const PhotonMode& a, const PhotonMode& b,
                           WavenumberConvention conv) {
    const double amp = std::norm(cgg_steady(pair, c, a, b).value);
    const double p = spectral_weight(pair, a.detuning) * spectral_weight(pair, b.detuning) * amp;
    return conv == WavenumberConvention::ScaledN2 ? p * pair.refractive_index * pair.refractive_index : p;
}

double relative_phase(const EmitterPair& pair, const Couplings& c, double detuning, double detuning_prime) {
    const double h = kPi / 2;
    const auto xx = cgg_steady(pair, c, PhotonMode{h, h, detuning, Vec3::UnitX()},
                               PhotonMode{h, -h, detuning_prime, Vec3::UnitX()}).value;
    const auto zz = cgg_steady(pair, c, PhotonMode{h, h, detuning, Vec3::UnitZ()},
                               PhotonMode{h, -h, detuning_prime, Vec3::UnitZ()}).value;
    if (std::abs(xx) < 1e-300 || std::abs(zz) < 1e-300)
        throw UndefinedPhaseError("relative phase undefined: co-polarized amplitude vanishes");
    const double d = std::arg(xx * std::conj(zz));
    return d <= -kPi ? kPi : d;
}

double dipole_radiation_pattern(const Vec3& orientation, double theta, double phi) {
    const double c = orientation.normalized().dot(direction(theta, phi));
    return std::max(0.0, 1.0 - c * c);
}

PairKernel::PairKernel(const EmitterPair& pair, const Couplings& c, const Vec3& k_a, const std::array<Vec3, 2>& pol_a,
                       const Vec3& k_b, const std::array<Vec3, 2>& pol_b)
    : pair_(pair), c_(c) {
    auto build = [&](const Vec3& k, const std::array<Vec3, 2>& pol) {
        Side s;
        for (int i = 0; i < 2; ++i) {
            s.mu1_dot[i] = pair.dipole(1).dot(pol[i]);
            s.mu2_dot[i] = pair.dipole(2).dot(pol[i]);
        }
        const double k0 = 2.0 * kPi * pair.refractive_index;
        s.kr1 = k0 * k.dot(pair.position(1));
        s.kr2 = k0 * k.dot(pair.position(2));
        return s;
    };
    a_ = build(k_a, pol_a);
    b_ = build(k_b, pol_b);
}

void PairKernel::numerators(const Side& side, double detuning, std::array<cd, 2>& sym,
                            std::array<cd, 2>& anti) const {
    const double scale = 1.0 + detuning / pair_.omega0_over_gamma0;
    // i·exp(−iφ) folded into one polar call per emitter.
    const cd ph1 = I * std::polar(1.0, -scale * side.kr1);
    const cd ph2 = I * std::polar(1.0, -scale * side.kr2);
    for (int s = 0; s < 2; ++s) {
        const cd p1 = side.mu1_dot[s] * ph1;
        const cd p2 = side.mu2_dot[s] * ph2;
        sym[s] = p1 + p2;
        anti[s] = p1 - p2;
    }
}

Eigen::Matrix2cd PairKernel::operator()(double da, double db) const {
    std::array<cd, 2> sa, aa, sb, ab;
    numerators(a_, da, sa, aa);
    numerators(b_, db, sb, ab);
    const cd pa = denom_plus(c_, da), ma = denom_minus(c_, da);
    const cd pb = denom_plus(c_, db), mb = denom_minus(c_, db);
    const cd inv0 = 1.0 / denom_zero(da, db);
    const cd ks = (1.0 / pb - inv0) / ma + (1.0 / pa - inv0) / mb;
    const cd ka = (1.0 / mb - inv0) / pa + (1.0 / ma - inv0) / pb;
    Eigen::Matrix2cd out;
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) out(s, t) = 0.5 * (ab[t] * aa[s] * ka - sa[s] * sb[t] * ks);
    return out;
}

}  // namespace biphoton
