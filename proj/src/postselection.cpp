#include "biphoton/postselection.hpp"

#include "biphoton/errors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace biphoton {

FilterPair FilterPair::at_hybrid_lines(const Couplings& c, double gamma_filter) {
    FilterPair f{gamma_filter, c.V, -c.V};
    f.validate();
    return f;
}

void FilterPair::validate() const {
    if (!(gamma_filter > 0) || !std::isfinite(gamma_filter)) throw DomainError("filter linewidth must be positive");
    if (!std::isfinite(center_a) || !std::isfinite(center_b)) throw DomainError("filter centres must be finite");
}

cd filter_profile(double detuning, double center, double gamma_filter) {
    if (!(gamma_filter > 0)) throw DomainError("filter linewidth must be positive");
    const double h = 0.5 * gamma_filter;
    return h / cd(h, detuning - center);
}

LensRotation lens_rotation(double theta, double phi) {
    const Vec3 k = direction(theta, phi);
    if (!(k.y() > 0)) throw DomainError("lens detection requires k.y > 0");
    const double a = std::cos(theta), b = std::sin(theta) * std::cos(phi);
    const double nu = std::hypot(a, b);
    LensRotation out;
    if (nu < 1e-12) {
        out.r.setIdentity();
        out.on_axis = true;
        return out;
    }
    out.r << a / nu, b / nu, -b / nu, a / nu;
    return out;
}

DetectorArm DetectorArm::on_axis_plus_y() { return {kPi / 2, kPi / 2, {Vec3::UnitX(), Vec3::UnitZ()}}; }

DetectorArm DetectorArm::on_axis_minus_y() { return {kPi / 2, -kPi / 2, {Vec3::UnitX(), Vec3::UnitZ()}}; }

DetectorArm DetectorArm::with_lens(double theta, double phi) {
    const LensRotation rot = lens_rotation(theta, phi);
    if (rot.on_axis) return {theta, phi, {Vec3::UnitX(), Vec3::UnitZ()}};
    const PolarizationBasis tetm = basis_for(theta, phi, BasisLabel::TE_TM);
    const Vec3 ex = rot.r(0, 0) * tetm.e1 + rot.r(0, 1) * tetm.e2;
    const Vec3 ez = rot.r(1, 0) * tetm.e1 + rot.r(1, 1) * tetm.e2;
    return {theta, phi, {ex, ez}};
}

PolarizationDensityMatrix tomography(const EmitterPair& pair, const Couplings& c, const FilterPair& filters,
                                     const DetectorArm& alice, const DetectorArm& bob, const QuadratureSpec& spec) {
    spec.validate();
    filters.validate();
    const double G = filters.gamma_filter;
    const double W = spec.window_for(c.V, std::max({G, std::abs(filters.center_a), std::abs(filters.center_b)}));
    const PairKernel kernel(pair, c, direction(alice.theta, alice.phi), alice.pol, direction(bob.theta, bob.phi),
                            bob.pol);

    using Vec10 = Eigen::Matrix<cd, 10, 1>;
    auto f = [&](double da, double db) -> Vec10 {
        const double fa = std::norm(filter_profile(da, filters.center_a, G));
        const double fb = std::norm(filter_profile(db, filters.center_b, G));
        const double w = fa * fb * spectral_weight(pair, da, W) * spectral_weight(pair, db, W);
        const Eigen::Matrix2cd amp = kernel(da, db);
        const cd v[4] = {amp(0, 0), amp(0, 1), amp(1, 0), amp(1, 1)};
        Vec10 out;
        int k = 0;
        for (int r = 0; r < 4; ++r)
            for (int s = r; s < 4; ++s) out(k++) = w * v[r] * std::conj(v[s]);
        return out;
    };
    auto seeds = [G](double centre) {
        return std::vector<double>{centre, centre - G, centre + G, centre - 10 * G, centre + 10 * G};
    };
    std::vector<double> outer = seeds(filters.center_a);
    outer.push_back(c.V);
    outer.push_back(-c.V);
    const std::vector<double> inner_base = [&] {
        auto v = seeds(filters.center_b);
        v.push_back(c.V);
        v.push_back(-c.V);
        return v;
    }();
    auto inner = [&](double da) {
        auto v = inner_base;
        v.push_back(-da);
        return v;
    };
    const auto r = quad::integrate_plane<Vec10>(f, W, spec.tails, spec.tolerance(), outer, inner);

    PolarizationDensityMatrix out;
    int k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            out.m(i, j) = r.value(k++);
            if (j != i) out.m(j, i) = std::conj(out.m(i, j));
        }
    for (int i = 0; i < 4; ++i) out.m(i, i) = out.m(i, i).real();
    out.n_factor = out.m.trace().real();
    if (!(out.n_factor > 0)) throw NumericalError("tomography: non-positive normalization N");
    out.m /= out.n_factor;
    out.quad_error = r.error;
    out.converged = r.converged;
    out.evaluations = r.evaluations;
    check_density_matrix(out.m);
    return out;
}

void check_density_matrix(const Eigen::Matrix4cd& rho) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw NumericalError("density matrix is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > 1e-10) throw NumericalError("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigen-solver failed on density matrix");
    if (es.eigenvalues().minCoeff() < -1e-10) throw NumericalError("density matrix is not positive semidefinite");
}

namespace {

Eigen::Matrix4cd hermitian_part(const Eigen::Matrix4cd& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

double concurrence(const Eigen::Matrix4cd& rho_in) {
    const Eigen::Matrix4cd rho = hermitian_part(rho_in);
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    yy(3, 0) = -1;
    const Eigen::Matrix4cd tilde = yy * rho.conjugate() * yy;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    if (es.info() != Eigen::Success) throw NumericalError("concurrence: eigen-solver failed on rho");
    const Eigen::Vector4d root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix4cd sq = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es2(hermitian_part(sq * tilde * sq), Eigen::EigenvaluesOnly);
    if (es2.info() != Eigen::Success) throw NumericalError("concurrence: eigen-solver failed on R matrix");
    std::array<double, 4> lam;
    for (int i = 0; i < 4; ++i) {
        const double l = es2.eigenvalues()(i);
        lam[i] = l < 1e-12 ? 0.0 : std::sqrt(l);
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::clamp(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0);
}

Eigen::Vector4cd bell_minus() {
    const double s = 1.0 / std::sqrt(2.0);
    return Eigen::Vector4cd(s, 0, 0, -s);
}

double fidelity_unsquared(const Eigen::Matrix4cd& rho) {
    const Eigen::Vector4cd b = bell_minus();
    return (b.adjoint() * rho * b)(0, 0).real();
}

double fidelity(const Eigen::Matrix4cd& rho) {
    const double e = fidelity_unsquared(rho);
    return e * e;
}

double purity(const Eigen::Matrix4cd& rho) { return (rho * rho).trace().real(); }

}  // namespace biphoton
