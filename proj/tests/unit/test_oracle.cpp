#include "biphoton/errors.hpp"
#include "biphoton/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace biphoton;

namespace {
constexpr double h = kPi / 2;
}

TEST_SUITE("oracle") {

TEST_CASE("Dormand-Prince error tracks the tolerance") {
    const cd lambda(-0.7, 3.0);
    auto rhs = [&](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& d) { d = lambda * y; };
    double prev = 1;
    long prev_steps = 0;
    for (double tol : {1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
        Eigen::VectorXcd y(1);
        y(0) = 1;
        OdeOptions opt;
        opt.tolerance = tol;
        const auto stats = integrate_dopri(rhs, 0.0, 5.0, y, opt);
        const double err = std::abs(y(0) - std::exp(lambda * 5.0));
        CHECK(err < prev);
        CHECK(err < 100 * tol);
        CHECK(stats.accepted > prev_steps);
        // Fifth order: steps grow roughly as tol^(-1/5) per decade pair (factor ≈ 2.5 per 100×).
        if (prev_steps > 20) CHECK(double(stats.accepted) / prev_steps < 4.0);
        prev = err;
        prev_steps = stats.accepted;
    }
}

TEST_CASE("integrator failure modes") {
    auto rhs = [](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& d) { d = y * 1e6; };
    Eigen::VectorXcd y(1);
    y(0) = 1;
    OdeOptions opt;
    opt.max_steps = 10;
    CHECK_THROWS_AS(integrate_dopri(rhs, 0.0, 1.0, y, opt), NumericalError);
    auto blowup = [](double t, const Eigen::VectorXcd&, Eigen::VectorXcd& d) { d(0) = 1.0 / (1.0 - t); };
    y(0) = 0;
    OdeOptions fine;
    CHECK_THROWS_AS(integrate_dopri(blowup, 0.0, 2.0, y, fine), NumericalError);
}

TEST_CASE("single-photon trajectory matches the closed form") {
    for (double r : {0.05, 0.075, 0.5}) {
        const auto pair = EmitterPair::perpendicular(r);
        const auto c = hybrid_levels(pair);
        for (const PhotonMode& m : {PhotonMode{h, h, c.V, Vec3::UnitX()}, PhotonMode{h, -h, -c.V, Vec3::UnitZ()},
                                    PhotonMode{1.1, 0.3, 2.5, basis_for(1.1, 0.3, BasisLabel::SPHERICAL).e2}}) {
            const auto tr = integrate_single_photon(pair, c, m, 10.0);
            CHECK(tr.times.front() == 0);
            CHECK(tr.c_eg.front() == cd(0, 0));
            CHECK(tr.c_ge.front() == cd(0, 0));
            CHECK(tr.times.back() == doctest::Approx(10.0));
            double worst = 0;
            for (std::size_t k = 0; k < tr.times.size(); ++k) {
                const auto ref = single_photon_analytic(pair, c, m, tr.times[k]);
                worst = std::max({worst, std::abs(tr.c_eg[k] - ref.c_eg), std::abs(tr.c_ge[k] - ref.c_ge)});
                CHECK(std::abs(tr.c_ee[k] - std::exp(-tr.times[k])) < 1e-15);
            }
            CHECK(worst <= 1e-6);
        }
    }
    const auto pair = EmitterPair::perpendicular(0.05);
    CHECK_THROWS_AS(integrate_single_photon(pair, hybrid_levels(pair), PhotonMode{h, h, 0, Vec3::UnitX()}, 51.0),
                    DomainError);
}

TEST_CASE("symmetric decoupled system gives equal amplitudes") {
    EmitterPair pair = EmitterPair::perpendicular(0.3);
    pair.alpha1 = pair.alpha2 = 0.4;
    Couplings none;
    const PhotonMode m{h, h, 0.7, Vec3::UnitX()};
    const auto tr = integrate_single_photon(pair, none, m, 20.0);
    for (std::size_t k = 0; k < tr.times.size(); ++k) CHECK(std::abs(tr.c_eg[k] - tr.c_ge[k]) < 1e-14);
}

TEST_CASE("time-domain two-photon amplitude reaches the steady state") {
    const auto pair = EmitterPair::perpendicular(0.075);
    const auto c = hybrid_levels(pair);
    const PhotonMode ax{h, h, c.V, Vec3::UnitX()}, bx{h, -h, -c.V, Vec3::UnitX()};
    const PhotonMode az{h, h, c.V, Vec3::UnitZ()}, bz{h, -h, -c.V, Vec3::UnitZ()};
    CHECK(verify_cgg_limit(pair, c, ax, bx).relative_deviation <= 1e-6);
    CHECK(verify_cgg_limit(pair, c, az, bz).relative_deviation <= 1e-6);
    const auto cross = verify_cgg_limit(pair, c, ax, bz);
    CHECK(std::norm(cross.time_domain) <= 1e-25);
    CHECK(std::norm(cross.steady) <= 1e-25);
    for (std::uint64_t i = 0; i < 10; ++i) {
        const auto a = sample_mode(5, 2 * i, 12), b = sample_mode(5, 2 * i + 1, 12);
        CHECK(verify_cgg_limit(pair, c, a, b).relative_deviation <= 1e-6);
    }
    const auto early = verify_cgg_limit(pair, c, ax, bx, 1.0);
    const cd closed = cgg_time_dependent(pair, c, ax, bx, 1.0);
    CHECK(std::abs(closed - early.time_domain) <= 1e-8 * std::abs(early.time_domain));
}

TEST_CASE("sampled modes are valid and reproducible") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto m = sample_mode(3, i, 4.0);
        CHECK_NOTHROW(m.validate());
        CHECK(std::abs(m.detuning) <= 4.0);
        const auto again = sample_mode(3, i, 4.0);
        CHECK(again.pol == m.pol);
        CHECK(again.detuning == m.detuning);
    }
}

}
