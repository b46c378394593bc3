#include "biphoton/emitters.hpp"
#include "biphoton/errors.hpp"
#include "generators.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace biphoton;

namespace {

// Direct long-double evaluation of the dipole sums; the reference for the frozen values below.
struct RefCouplings {
    long double V, g;
};

RefCouplings reference(double a1, double a2, double r12, double n, double adw) {
    const long double x = 2.0L * 3.14159265358979323846264338L * n * r12;
    const long double cc = std::cos((long double)a1) * std::cos((long double)a2);
    const long double q = cc - 2.0L * std::sin((long double)a1) * std::sin((long double)a2);
    const long double V =
        adw * 0.75L * (-cc * std::cos(x) / x + q * (std::sin(x) / (x * x) + std::cos(x) / (x * x * x)));
    const long double g =
        adw * 1.5L * (cc * std::sin(x) / x + q * (std::cos(x) / (x * x) - std::sin(x) / (x * x * x)));
    return {V, g};
}

}  // namespace

TEST_SUITE("emitters") {

TEST_CASE("coherent coupling anchors") {
    const auto p05 = EmitterPair::perpendicular(0.05);
    const auto p075 = EmitterPair::perpendicular(0.075);
    CHECK(coherent_coupling(p05) == doctest::Approx(11.17).epsilon(5e-3));
    CHECK(coherent_coupling(p075) == doctest::Approx(3.5).epsilon(3e-2));
    // Frozen from the long-double reference.
    CHECK(coherent_coupling(p05) == doctest::Approx(11.169678141563).epsilon(1e-12));
    CHECK(coherent_coupling(p075) == doctest::Approx(3.48102660494846).epsilon(1e-12));
    CHECK(double(reference(kPi / 4, -kPi / 4, 0.05, 1.5, 1).V) == doctest::Approx(11.169678141563).epsilon(1e-12));
}

TEST_CASE("dissipative coupling at 0.075") {
    const auto p = EmitterPair::perpendicular(0.075);
    const double g = dissipative_coupling(p);
    CHECK(g == doctest::Approx(-0.024103114560328).epsilon(1e-10));
    CHECK(g == doctest::Approx(double(reference(kPi / 4, -kPi / 4, 0.075, 1.5, 1).g)).epsilon(1e-12));
}

TEST_CASE("couplings match the reference on random inputs") {
    testgen::Gen gen(11);
    for (int i = 0; i < 200; ++i) {
        EmitterPair p;
        p.alpha1 = gen.uniform(-kPi, kPi);
        p.alpha2 = gen.uniform(-kPi, kPi);
        p.r12 = std::exp(gen.uniform(std::log(0.1), std::log(5.0)));
        p.alpha_dw = gen.uniform(0.05, 1.0);
        const auto ref = reference(p.alpha1, p.alpha2, p.r12, p.refractive_index, p.alpha_dw);
        CHECK(coherent_coupling(p) == doctest::Approx(double(ref.V)).epsilon(1e-10).scale(1e-10));
        CHECK(dissipative_coupling(p) == doctest::Approx(double(ref.g)).epsilon(1e-10).scale(1e-10));
    }
}

TEST_CASE("small-separation limits") {
    EmitterPair parallel = EmitterPair::perpendicular(1e-3);
    parallel.alpha1 = parallel.alpha2 = 0;
    EmitterPair perp = EmitterPair::perpendicular(1e-3);
    CHECK(std::abs(dissipative_coupling(parallel) - 1.0) <= 1e-4);
    CHECK(std::abs(dissipative_coupling(perp)) <= 1e-4);
    // Richardson extrapolation r→0 from r and r/2 (the leading correction is O(x²)).
    for (const EmitterPair* p : {&parallel, &perp}) {
        EmitterPair half = *p;
        half.r12 /= 2;
        const double extrap = (4 * dissipative_coupling(half) - dissipative_coupling(*p)) / 3;
        CHECK(std::abs(extrap - (p == &parallel ? 1.0 : 0.0)) <= 1e-4);
    }
    CHECK(hybrid_levels(parallel).rate_minus == doctest::Approx(0).scale(1).epsilon(1e-4));
}

TEST_CASE("hybrid levels") {
    const auto c = hybrid_levels(EmitterPair::perpendicular(0.075));
    CHECK(c.omega_plus - c.omega_minus == doctest::Approx(2 * c.V));
    CHECK(c.omega_plus - c.omega_minus == doctest::Approx(7.0).epsilon(3e-2));
    CHECK(c.rate_plus == doctest::Approx(1 + c.gamma12));
    CHECK(c.rate_minus == doctest::Approx(1 - c.gamma12));
}

TEST_CASE("property: linear in alpha_dw") {
    testgen::Gen gen(3);
    for (int i = 0; i < 100; ++i) {
        EmitterPair p = EmitterPair::perpendicular(gen.uniform(0.02, 3.0));
        p.alpha1 = gen.uniform(-kPi, kPi);
        p.alpha2 = gen.uniform(-kPi, kPi);
        const double V1 = coherent_coupling(p), g1 = dissipative_coupling(p);
        const double c = gen.uniform(0.01, 1.0);
        p.alpha_dw = c;
        CHECK(coherent_coupling(p) == doctest::Approx(c * V1).epsilon(1e-13).scale(1e-12));
        CHECK(dissipative_coupling(p) == doctest::Approx(c * g1).epsilon(1e-13).scale(1e-12));
    }
    EmitterPair half = EmitterPair::perpendicular(0.05);
    half.alpha_dw = 0.5;
    CHECK(coherent_coupling(half) == doctest::Approx(5.585).epsilon(5e-4));
}

TEST_CASE("property: exchange symmetry") {
    testgen::Gen gen(5);
    for (int i = 0; i < 100; ++i) {
        EmitterPair p = EmitterPair::perpendicular(gen.uniform(0.02, 3.0));
        p.alpha1 = gen.uniform(-kPi, kPi);
        p.alpha2 = gen.uniform(-kPi, kPi);
        EmitterPair q = p;
        std::swap(q.alpha1, q.alpha2);
        CHECK(coherent_coupling(p) == coherent_coupling(q));
        CHECK(dissipative_coupling(p) == dissipative_coupling(q));
    }
}

TEST_CASE("property: perpendicular dissipative coupling stays small at short range") {
    for (int i = 0; i <= 150; ++i) {
        const double r = 0.03 + i * 1e-3;
        CHECK(std::abs(dissipative_coupling(EmitterPair::perpendicular(r))) < 0.12);
    }
    // Beyond the near field the bracket reaches its extremum near 0.355 lambda0.
    CHECK(dissipative_coupling(EmitterPair::perpendicular(0.3546)) == doctest::Approx(-0.2301).epsilon(1e-3));
}

TEST_CASE("property: far-field decay and |gamma12| <= 1") {
    testgen::Gen gen(8);
    double prevV = 1e300;
    for (double r : {10.0, 100.0, 1000.0, 10000.0}) {
        const auto p = EmitterPair::perpendicular(r);
        const double env = std::abs(coherent_coupling(p)) + std::abs(dissipative_coupling(p));
        CHECK(env < prevV);
        prevV = 2.0 / (2 * kPi * 1.5 * r);
        CHECK(env <= prevV);
    }
    for (int i = 0; i < 300; ++i) {
        EmitterPair p = EmitterPair::perpendicular(std::exp(gen.uniform(std::log(1e-3), std::log(10.0))));
        p.alpha1 = gen.uniform(-kPi, kPi);
        p.alpha2 = gen.uniform(-kPi, kPi);
        CHECK(std::abs(dissipative_coupling(p)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("uncoupled limit") {
    EmitterPair p = EmitterPair::perpendicular(0.05);
    p.alpha_dw = 0;
    const auto c = hybrid_levels(p);
    CHECK(c.V == 0);
    CHECK(c.omega_plus == c.omega_minus);
    CHECK(c.rate_plus == 1);
    CHECK(c.rate_minus == 1);
    p.alpha_dw = 1.5;
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("validation") {
    EmitterPair p = EmitterPair::perpendicular(0.05);
    p.r12 = 0;
    CHECK_THROWS_AS(coherent_coupling(p), DomainError);
    p.r12 = -1;
    CHECK_THROWS_AS(dissipative_coupling(p), DomainError);
    PhysicalPreset bad;
    bad.refractive_index = 0.9;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    CHECK_THROWS_AS(preset_by_name("nope"), DomainError);
}

TEST_CASE("preset loading") {
    std::istringstream in("# comment\nname = test\ngamma0_hz = 1e7\nlambda0_nm = 600\nn = 2\nalpha_dw = 0.5\n");
    const auto p = load_preset(in);
    CHECK(p.name == "test");
    CHECK(p.gamma0_hz == 1e7);
    CHECK(p.lambda0_vac == doctest::Approx(600e-9));
    CHECK(p.refractive_index == 2);
    CHECK(p.alpha_dw == 0.5);
    std::istringstream bad("colour = blue\n");
    CHECK_THROWS_AS(load_preset(bad), DomainError);
    CHECK(PhysicalPreset::dbatt().omega0_over_gamma0() == doctest::Approx(2.2562840219763678e7).epsilon(1e-14));
}

TEST_CASE("rescale keeps V fixed") {
    const auto p = EmitterPair::perpendicular(0.05);
    CHECK(rescale_r12_for_fixed_V(p, 1.0) == p.r12);
    for (double a : {0.1, 0.5, 0.9}) {
        const double r = rescale_r12_for_fixed_V(p, a);
        CHECK(r < 0.05);
        EmitterPair q = p;
        q.r12 = r;
        q.alpha_dw = a;
        CHECK(coherent_coupling(q) == doctest::Approx(coherent_coupling(p)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(rescale_r12_for_fixed_V(p, 1e-12), NoRootError);
}

}
