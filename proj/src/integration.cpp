#include "biphoton/integration.hpp"

#include "biphoton/errors.hpp"
#include "biphoton/parallel.hpp"

#include <cmath>

namespace biphoton {

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0 && rel_tol <= 1e-3)) throw DomainError("rel_tol must lie in (0, 1e-3]");
    if (!(abs_tol >= 0)) throw DomainError("abs_tol must be non-negative");
    if (!(window_halfwidth >= 0) || !std::isfinite(window_halfwidth)) throw DomainError("window must be finite and >= 0");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be positive");
}

double QuadratureSpec::window_for(double V, double gamma_filter) const {
    const double scale = std::max({1.0, std::abs(V), gamma_filter});
    if (window_halfwidth == 0) return 50.0 * scale;
    if (window_halfwidth < 20.0 * scale)
        throw DomainError("window half-width " + std::to_string(window_halfwidth) + " is below 20*max(1,|V|,Gamma) = " +
                          std::to_string(20.0 * scale));
    return window_halfwidth;
}

Estimate integrate_1d(const std::function<double(double)>& f, const QuadratureSpec& spec,
                      const std::vector<double>& breakpoints) {
    spec.validate();
    const double W = spec.window_halfwidth > 0 ? spec.window_halfwidth : 50.0;
    const auto r = quad::integrate_line<double>(f, W, spec.tails, spec.tolerance(), breakpoints);
    return {r.value, r.error, r.converged, r.evaluations};
}

namespace {

std::array<Vec3, 2> pols(const PolarizationBasis& b) { return {b.e1, b.e2}; }

}  // namespace

Estimate angular_density(const EmitterPair& pair, const Couplings& c, double theta, double phi, double theta_p,
                         double phi_p, const QuadratureSpec& spec, BasisLabel basis) {
    spec.validate();
    const double W = spec.window_for(c.V);
    const PairKernel kernel(pair, c, direction(theta, phi), pols(basis_for(theta, phi, basis)),
                            direction(theta_p, phi_p), pols(basis_for(theta_p, phi_p, basis)));
    auto f = [&](double d, double dp) {
        return spectral_weight(pair, d, W) * spectral_weight(pair, dp, W) * kernel(d, dp).squaredNorm();
    };
    const std::vector<double> outer{-c.V, c.V};
    auto inner = [&](double d) { return std::vector<double>{-c.V, c.V, -d}; };
    const auto r = quad::integrate_plane<double>(f, W, spec.tails, spec.tolerance(), outer, inner);
    return {r.value, r.error, r.converged, r.evaluations};
}

AngularDensityGrid angular_density_grid(const EmitterPair& pair, const Couplings& c, double theta, double phi,
                                        const std::vector<double>& theta_p, const std::vector<double>& phi_p,
                                        const QuadratureSpec& spec) {
    AngularDensityGrid g{theta, phi, theta_p, phi_p, Eigen::MatrixXd(theta_p.size(), phi_p.size()), spec, true};
    const std::size_t nj = phi_p.size();
    std::vector<char> ok(theta_p.size() * nj, 1);
    parallel_for(theta_p.size() * nj, [&](std::size_t idx) {
        const std::size_t i = idx / nj, j = idx % nj;
        const auto e = angular_density(pair, c, theta, phi, theta_p[i], phi_p[j], spec);
        g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = e.value;
        ok[idx] = e.converged;
    });
    for (char o : ok) g.converged = g.converged && o;
    return g;
}

double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint32_t stream) {
    // SplitMix64 finalizer applied to a Weyl sequence position.
    std::uint64_t z = seed * 0xD1342543DE82EF95ULL + (index * 16 + stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

namespace {

double cauchy_quantile(double u, double center, double width) { return center + width * std::tan(kPi * (u - 0.5)); }

double cauchy_pdf(double x, double center, double width) {
    const double t = (x - center) / width;
    return 1.0 / (kPi * width * (1.0 + t * t));
}

// Proposal over (Δ, Δ'): two resonant peaks, the energy-conservation ridge and a broad floor.
struct DetuningProposal {
    double V, peak_width, ridge_sum_width, ridge_diff_width, broad_width;
    static constexpr double w_peak = 0.3, w_ridge = 0.25, w_broad = 0.15;

    void sample(double u0, double u1, double u2, double& d, double& dp) const {
        if (u0 < w_peak) {
            d = cauchy_quantile(u1, V, peak_width);
            dp = cauchy_quantile(u2, -V, peak_width);
        } else if (u0 < 2 * w_peak) {
            d = cauchy_quantile(u1, -V, peak_width);
            dp = cauchy_quantile(u2, V, peak_width);
        } else if (u0 < 2 * w_peak + w_ridge) {
            const double sum = cauchy_quantile(u1, 0.0, ridge_sum_width);
            const double diff = cauchy_quantile(u2, 0.0, ridge_diff_width);
            d = 0.5 * (sum + diff);
            dp = 0.5 * (sum - diff);
        } else {
            d = cauchy_quantile(u1, 0.0, broad_width);
            dp = cauchy_quantile(u2, 0.0, broad_width);
        }
    }

    double density(double d, double dp) const {
        const double peaks = cauchy_pdf(d, V, peak_width) * cauchy_pdf(dp, -V, peak_width) +
                             cauchy_pdf(d, -V, peak_width) * cauchy_pdf(dp, V, peak_width);
        // Jacobian of (Δ, Δ') → (Δ+Δ', Δ−Δ') is 2.
        const double ridge = 2.0 * cauchy_pdf(d + dp, 0.0, ridge_sum_width) * cauchy_pdf(d - dp, 0.0, ridge_diff_width);
        const double broad = cauchy_pdf(d, 0.0, broad_width) * cauchy_pdf(dp, 0.0, broad_width);
        return w_peak * peaks + w_ridge * ridge + w_broad * broad;
    }
};

}  // namespace

NormalizationEstimate total_normalization(const EmitterPair& pair, const Couplings& c, long n_samples,
                                          std::uint64_t seed, double window_halfwidth) {
    if (n_samples < 100000) throw DomainError("total_normalization needs at least 1e5 samples");
    const double aV = std::abs(c.V);
    const double W = window_halfwidth > 0 ? window_halfwidth : 50.0 * std::max(1.0, aV);
    const DetuningProposal q{c.V, 0.6, 1.0, 2.0 * aV + 1.0, aV + 1.0};
    const double sphere_sq = 16.0 * kPi * kPi;

    constexpr long block = 4096;
    const long n_blocks = (n_samples + block - 1) / block;
    std::vector<double> sums(n_blocks), sums_sq(n_blocks);
    parallel_for(static_cast<std::size_t>(n_blocks), [&](std::size_t b) {
        double s = 0, s2 = 0;
        const long begin = static_cast<long>(b) * block;
        const long end = std::min(n_samples, begin + block);
        for (long i = begin; i < end; ++i) {
            const auto idx = static_cast<std::uint64_t>(i);
            auto u = [&](std::uint32_t k) { return counter_uniform(seed, idx, k); };
            const double th = std::acos(2.0 * u(0) - 1.0), ph = 2.0 * kPi * u(1);
            const double thp = std::acos(2.0 * u(2) - 1.0), php = 2.0 * kPi * u(3);
            double d, dp;
            q.sample(u(4), u(5), u(6), d, dp);
            const PairKernel kernel(pair, c, direction(th, ph), pols(basis_for(th, ph, BasisLabel::SPHERICAL)),
                                    direction(thp, php), pols(basis_for(thp, php, BasisLabel::SPHERICAL)));
            const double f = spectral_weight(pair, d, W) * spectral_weight(pair, dp, W) * kernel(d, dp).squaredNorm();
            const double w = sphere_sq * f / q.density(d, dp);
            s += w;
            s2 += w * w;
        }
        sums[b] = s;
        sums_sq[b] = s2;
    });
    double s = 0, s2 = 0;
    for (long b = 0; b < n_blocks; ++b) {
        s += sums[b];
        s2 += sums_sq[b];
    }
    const double n = static_cast<double>(n_samples);
    const double mean = s / n;
    const double var = std::max(0.0, s2 / n - mean * mean);
    NormalizationEstimate e;
    e.integral = mean;
    e.std_error = std::sqrt(var / n);
    e.pair_probability = 0.5 * mean;
    e.pair_std_error = 0.5 * e.std_error;
    e.n_samples = n_samples;
    e.seed = seed;
    if (!(e.std_error <= 0.05 * std::abs(e.integral)))
        throw NumericalError("normalization Monte-Carlo standard error exceeds 5% of the estimate");
    return e;
}

}  // namespace biphoton
