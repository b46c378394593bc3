#include "biphoton/errors.hpp"
#include "biphoton/integration.hpp"
#include "biphoton/parallel.hpp"
#include "generators.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>

using namespace biphoton;

namespace {

double lorentzian(double x, double centre, double fwhm) {
    const double hw = 0.5 * fwhm;
    return hw / (kPi * ((x - centre) * (x - centre) + hw * hw));
}

struct ThreadCap {
    explicit ThreadCap(const char* n) { setenv("BIPHOTON_THREADS", n, 1); }
    ~ThreadCap() { unsetenv("BIPHOTON_THREADS"); }
};

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("GK21 integrates polynomials up to degree 31 exactly") {
    testgen::Gen gen(41);
    for (int deg = 0; deg <= 31; ++deg) {
        const double a = gen.uniform(-2, 0), b = gen.uniform(0.5, 2);
        auto f = [deg](double x) { return (deg + 1) * std::pow(x, deg); };
        long evals = 0;
        quad::Segment s{a, b};
        const auto p = quad::detail::gk21<double>(f, s, evals);
        CHECK(p.value == doctest::Approx(std::pow(b, deg + 1) - std::pow(a, deg + 1)).epsilon(1e-13).scale(1));
        CHECK(evals == 21);
    }
}

TEST_CASE("integrator error shrinks with the requested tolerance") {
    auto f = [](double x) { return std::exp(-x) * std::cos(20 * x); };
    const double exact = (1 - std::exp(-3.0) * (std::cos(60.0) - 20 * std::sin(60.0))) / 401.0;
    double prev = 1;
    for (double rel : {1e-4, 1e-6, 1e-8, 1e-10}) {
        const auto r = quad::integrate_interval<double>(f, 0.0, 3.0, {rel, 0, 4000});
        const double err = std::abs(r.value - exact);
        CHECK(r.converged);
        CHECK(err <= std::max(rel * std::abs(exact), 1e-15));
        CHECK(err <= prev);
        CHECK(r.error >= 0.1 * err);
        prev = std::max(err, 1e-16);
    }
}

TEST_CASE("vector-valued integrands use the max-norm") {
    auto f = [](double x) {
        Eigen::Vector2cd v;
        v << std::cos(x), std::complex<double>(0, 1) * x * x;
        return v;
    };
    const auto r = quad::integrate_interval<Eigen::Vector2cd>(f, 0.0, 1.0, {1e-12, 0, 100});
    CHECK(std::abs(r.value(0) - std::sin(1.0)) < 1e-13);
    CHECK(std::abs(r.value(1) - std::complex<double>(0, 1.0 / 3)) < 1e-13);
}

TEST_CASE("integrate_1d examples") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    const auto narrow = integrate_1d([](double x) { return lorentzian(x, 0.0, 0.01); }, spec, {0.0});
    CHECK(narrow.converged);
    CHECK(narrow.value == doctest::Approx(1).epsilon(1e-9));
    const double V = 11.17;
    spec.window_halfwidth = 50 * V;
    const auto two =
        integrate_1d([V](double x) { return lorentzian(x, V, 1) + lorentzian(x, -V, 1); }, spec, {-V, V});
    CHECK(two.value == doctest::Approx(2).epsilon(1e-8));
    const auto zero = integrate_1d([](double) { return 0.0; }, spec);
    CHECK(zero.value == 0);
    CHECK(zero.converged);
}

TEST_CASE("non-convergence is flagged") {
    QuadratureSpec spec;
    spec.max_subdivisions = 3;
    spec.rel_tol = 1e-12;
    const auto r = integrate_1d([](double x) { return lorentzian(x, 0.3, 1e-4); }, spec);
    CHECK_FALSE(r.converged);
}

TEST_CASE("spec validation") {
    QuadratureSpec spec;
    spec.rel_tol = 0.1;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec.rel_tol = 1e-8;
    spec.window_halfwidth = 100;
    CHECK_THROWS_AS(spec.window_for(11.17), DomainError);
    CHECK(spec.window_for(1.0) == 100);
    spec.window_halfwidth = 0;
    CHECK(spec.window_for(11.17, 0.01) == doctest::Approx(558.5));
}

}

TEST_SUITE("integration") {

TEST_CASE("property: D is non-negative, mirror-symmetric and basis independent") {
    const auto pair = EmitterPair::perpendicular(0.075);
    const auto c = hybrid_levels(pair);
    QuadratureSpec spec;
    spec.rel_tol = 1e-9;
    testgen::Gen gen(42);
    for (int i = 0; i < 4; ++i) {
        const auto [tp, pp] = gen.angles();
        const auto d = angular_density(pair, c, kPi / 2, kPi / 2, tp, pp, spec);
        CHECK(d.converged);
        CHECK(d.value >= 0);
        const auto mirror = angular_density(pair, c, kPi / 2, -kPi / 2, tp, -pp, spec);
        CHECK(mirror.value == doctest::Approx(d.value).epsilon(1e-8));
    }
    // TE/TM needs both directions off the y axis.
    const auto s1 = angular_density(pair, c, 1.0, 0.4, 2.0, -2.2, spec, BasisLabel::SPHERICAL);
    const auto s2 = angular_density(pair, c, 1.0, 0.4, 2.0, -2.2, spec, BasisLabel::TE_TM);
    CHECK(s2.value == doctest::Approx(s1.value).epsilon(1e-10));
}

TEST_CASE("property: window independence") {
    const auto pair = EmitterPair::perpendicular(0.075);
    const auto c = hybrid_levels(pair);
    QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    const double base = 50 * std::max(1.0, std::abs(c.V));
    double ref = 0;
    for (double factor : {1.0, 1.5, 3.0}) {
        spec.window_halfwidth = factor * base;
        const auto d = angular_density(pair, c, kPi / 2, kPi / 2, kPi / 2, -kPi / 2, spec);
        if (factor == 1.0) ref = d.value;
        CHECK(d.value == doctest::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("angular density peaks along +-y") {
    const auto pair = EmitterPair::perpendicular(0.075);
    const auto c = hybrid_levels(pair);
    QuadratureSpec spec;
    spec.rel_tol = 1e-6;
    const std::vector<double> th{kPi / 4, kPi / 2, 3 * kPi / 4};
    const std::vector<double> ph{-kPi / 2, 0.0, kPi / 2, kPi};
    const auto g = angular_density_grid(pair, c, kPi / 2, kPi / 2, th, ph, spec);
    CHECK(g.converged);
    Eigen::Index i, j;
    g.values.maxCoeff(&i, &j);
    CHECK(i == 1);
    CHECK((j == 0 || j == 2));
    CHECK(g.values(1, 0) == doctest::Approx(g.values(1, 2)).epsilon(1e-5));
    CHECK(g.values.minCoeff() >= 0);
}

TEST_CASE("normalization Monte Carlo") {
    const auto pair = EmitterPair::perpendicular(0.075);
    const auto c = hybrid_levels(pair);
    const auto e1 = total_normalization(pair, c, 100000, 7);
    const auto e2 = total_normalization(pair, c, 200000, 7);
    CHECK(std::abs(e2.pair_probability - 1) <= 3 * e2.pair_std_error);
    CHECK(e2.pair_std_error <= 0.02);
    const double ratio = e1.std_error / e2.std_error;
    CHECK(ratio > 1.15);
    CHECK(ratio < 1.7);
    CHECK(e2.integral == doctest::Approx(2 * e2.pair_probability));
    CHECK_THROWS_AS(total_normalization(pair, c, 99999, 7), DomainError);
}

TEST_CASE("normalization is deterministic across thread counts") {
    const auto pair = EmitterPair::perpendicular(0.05);
    const auto c = hybrid_levels(pair);
    double single, many;
    {
        ThreadCap cap("1");
        single = total_normalization(pair, c, 100000, 3).integral;
    }
    many = total_normalization(pair, c, 100000, 3).integral;
    CHECK(single == many);
    CHECK(total_normalization(pair, c, 100000, 4).integral != many);
}

TEST_CASE("counter-based uniforms") {
    double mean = 0;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        const double u = counter_uniform(9, i, 2);
        CHECK(u > 0);
        CHECK(u < 1);
        mean += u;
    }
    CHECK(mean / 100000 == doctest::Approx(0.5).epsilon(0.01));
    CHECK(counter_uniform(1, 5, 0) == counter_uniform(1, 5, 0));
    CHECK(counter_uniform(1, 5, 0) != counter_uniform(1, 5, 1));
    CHECK(counter_uniform(1, 5, 0) != counter_uniform(2, 5, 0));
}

TEST_CASE("parallel_for visits every index and propagates failures") {
    std::vector<int> hit(100, 0);
    parallel_for(100, [&](std::size_t i) { hit[i] = 1; });
    for (int h : hit) CHECK(h == 1);
    try {
        parallel_for(100, [](std::size_t i) {
            if (i == 17) throw std::runtime_error(std::to_string(i));
        });
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "17");
    }
}

}
