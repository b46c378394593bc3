#pragma once

#include "biphoton/emitters.hpp"

#include <Eigen/Core>
#include <cmath>
#include <random>

namespace testgen {

// Small hand-rolled generators for property tests; each test seeds its own engine.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

    biphoton::Vec3 unit_vector() {
        std::normal_distribution<double> n;
        biphoton::Vec3 v(n(rng), n(rng), n(rng));
        return v.normalized();
    }

    // Random angle pair (theta, phi) avoiding the poles.
    std::pair<double, double> angles() { return {std::acos(uniform(-0.98, 0.98)), uniform(-biphoton::kPi, biphoton::kPi)}; }

    Eigen::Matrix2d rotation() {
        const double t = uniform(0, 2 * biphoton::kPi);
        Eigen::Matrix2d r;
        r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
        if (uniform(0, 1) < 0.5) r.col(1) *= -1;  // include reflections
        return r;
    }
};

}  // namespace testgen
