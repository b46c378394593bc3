#include "biphoton/oracle.hpp"

#include "biphoton/errors.hpp"
#include "biphoton/integration.hpp"

#include <algorithm>
#include <cmath>

namespace biphoton {

namespace {

// Dormand–Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

}  // namespace

OdeStats integrate_dopri(const ComplexRhs& rhs, double t0, double t1, Eigen::VectorXcd& y, const OdeOptions& opt,
                         const std::function<void(double, const Eigen::VectorXcd&)>& observe) {
    if (!(t1 >= t0)) throw DomainError("integrate_dopri: t1 must not precede t0");
    OdeStats st;
    const Eigen::Index n = y.size();
    Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ynew(n), tmp(n);
    double t = t0;
    double h = std::min(opt.initial_step, t1 - t0);
    if (observe) observe(t, y);
    if (t1 == t0) return st;
    rhs(t, y, k1);
    while (t < t1) {
        if (st.accepted + st.rejected > opt.max_steps) throw NumericalError("integrate_dopri: step budget exhausted");
        if (t + h > t1) h = t1 - t;
        tmp = y + h * a21 * k1;
        rhs(t + c2 * h, tmp, k2);
        tmp = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, tmp, k3);
        tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, tmp, k4);
        tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, tmp, k5);
        tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h, tmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h, ynew, k7);
        const Eigen::VectorXcd err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double norm = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double scale = opt.tolerance * (1.0 + std::max(std::abs(y(i)), std::abs(ynew(i))));
            norm = std::max(norm, std::abs(err(i)) / scale);
        }
        if (norm <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;
            ++st.accepted;
            if (observe) observe(t, y);
        } else {
            ++st.rejected;
        }
        const double factor = norm == 0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
        h *= factor;
        if (h < opt.min_step && t < t1) throw NumericalError("integrate_dopri: step size underflow");
    }
    return st;
}

namespace {

struct ModeSource {
    cd p1, p2;
    double detuning;
};

ModeSource source_of(const EmitterPair& pair, const PhotonMode& m) {
    return {projection(pair, m, 1), projection(pair, m, 2), m.detuning};
}

// d/dt of (c_eg, c_ge) for one mode; the excited-pair amplitude is e^{−t}.
void single_photon_rhs(const Couplings& c, const ModeSource& s, double t, cd eg, cd ge, cd& deg, cd& dge) {
    const cd drive = std::exp(cd(-t, s.detuning * t));
    const cd mix(0.5 * c.gamma12, c.V);
    deg = drive * s.p2 - 0.5 * eg - mix * ge;
    dge = drive * s.p1 - 0.5 * ge - mix * eg;
}

}  // namespace

AmplitudeTrajectory integrate_single_photon(const EmitterPair& pair, const Couplings& c, const PhotonMode& mode,
                                            double t_end, const OdeOptions& opt) {
    if (!(t_end >= 0 && t_end <= 50)) throw DomainError("t_end must lie in [0, 50]");
    const ModeSource s = source_of(pair, mode);
    AmplitudeTrajectory tr;
    tr.mode = mode;
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(2);
    auto rhs = [&](double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& d) {
        single_photon_rhs(c, s, t, v(0), v(1), d(0), d(1));
    };
    auto observe = [&](double t, const Eigen::VectorXcd& v) {
        tr.times.push_back(t);
        tr.c_ee.push_back(std::exp(-t));
        tr.c_eg.push_back(v(0));
        tr.c_ge.push_back(v(1));
    };
    integrate_dopri(rhs, 0.0, t_end, y, opt, observe);
    return tr;
}

SinglePhotonAmplitudes single_photon_analytic(const EmitterPair& pair, const Couplings& c, const PhotonMode& mode,
                                              double t) {
    const ModeSource s = source_of(pair, mode);
    const double d = mode.detuning;
    const cd sym = (s.p1 + s.p2) / cd(0.5 * c.rate_minus, -c.V - d);
    const cd anti = (s.p1 - s.p2) / cd(0.5 * c.rate_plus, c.V - d);
    const cd es = std::exp(-cd(0.5 * c.rate_plus, c.V) * t);
    const cd ea = std::exp(-cd(0.5 * c.rate_minus, -c.V) * t);
    const cd e0 = std::exp(-cd(1.0, -d) * t);
    return {0.5 * (sym * es - anti * ea - (sym - anti) * e0), 0.5 * (sym * es + anti * ea - (sym + anti) * e0)};
}

CggLimitReport verify_cgg_limit(const EmitterPair& pair, const Couplings& c, const PhotonMode& a, const PhotonMode& b,
                                double t_end, const OdeOptions& opt) {
    const ModeSource sa = source_of(pair, a), sb = source_of(pair, b);
    const double eps = einstein_weight(a, b);
    // State: c_eg(k), c_ge(k), c_eg(k'), c_ge(k'), c̃(t).
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(5);
    auto rhs = [&](double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& dv) {
        single_photon_rhs(c, sa, t, v(0), v(1), dv(0), dv(1));
        single_photon_rhs(c, sb, t, v(2), v(3), dv(2), dv(3));
        const cd pa = std::exp(cd(0.0, sa.detuning * t));
        const cd pb = std::exp(cd(0.0, sb.detuning * t));
        dv(4) = (pb * (v(0) * sb.p1 + v(1) * sb.p2) + pa * (v(2) * sa.p1 + v(3) * sa.p2)) / eps;
    };
    const OdeStats st = integrate_dopri(rhs, 0.0, t_end, y, opt);
    CggLimitReport rep;
    rep.time_domain = y(4);
    rep.steady = cgg_steady(pair, c, a, b).value;
    rep.t_end = t_end;
    rep.absolute_deviation = std::abs(rep.time_domain - rep.steady);
    const double scale = std::abs(rep.steady);
    rep.relative_deviation = scale > 0 ? rep.absolute_deviation / scale : rep.absolute_deviation;
    rep.steps = st.accepted;
    return rep;
}

}  // namespace biphoton

namespace biphoton {

PhotonMode sample_mode(std::uint64_t seed, std::uint64_t index, double max_detuning) {
    const double theta = std::acos(2.0 * counter_uniform(seed, index, 0) - 1.0);
    const double phi = 2.0 * kPi * counter_uniform(seed, index, 1);
    const double psi = 2.0 * kPi * counter_uniform(seed, index, 2);
    const double detuning = max_detuning * (2.0 * counter_uniform(seed, index, 3) - 1.0);
    const PolarizationBasis b = basis_for(theta, phi, BasisLabel::SPHERICAL);
    return PhotonMode{theta, phi, detuning, (std::cos(psi) * b.e1 + std::sin(psi) * b.e2).normalized()};
}

}  // namespace biphoton
