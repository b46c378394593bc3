#include "experiments.hpp"

#include "biphoton/errors.hpp"
#include "biphoton/integration.hpp"
#include "biphoton/oracle.hpp"
#include "biphoton/parallel.hpp"
#include "biphoton/postselection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <map>

namespace biphoton::app {

namespace {

const std::vector<ParamSpec>& common_params() {
    static const std::vector<ParamSpec> specs = {
        {"preset", "dbatt", "physical preset name"},
        {"gamma0_hz", "21500000", "spontaneous emission rate / 2pi, Hz"},
        {"lambda0_nm", "618", "vacuum transition wavelength, nm"},
        {"n", "1.5", "refractive index of the host"},
        {"alpha_dw", "1", "Debye-Waller/Franck-Condon factor"},
        {"omega0_over_gamma0", "auto", "transition frequency in units of gamma0 (auto: from preset)"},
        {"rel_tol", "1e-8", "relative quadrature tolerance"},
        {"abs_tol", "0", "absolute quadrature tolerance"},
        {"window", "0", "detuning half-window W in gamma0 (0: 50*max(1,|V|,Gamma))"},
        {"max_subdiv", "4000", "maximum quadrature subintervals"},
        {"tails", "1", "integrate beyond the window through mapped tails (1) or not (0)"},
        {"seed", "1", "random seed"},
    };
    return specs;
}

struct Setup {
    PhysicalPreset preset;
    EmitterPair pair;
    QuadratureSpec spec;
};

template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

// with_angles=false leaves the default dipole angles (for experiments that sweep them).
Setup make_setup(const ParamSet& p, bool with_angles = true) {
    return guarded([&] {
        Setup s;
        s.preset = preset_by_name(p.text("preset"));
        s.preset.gamma0_hz = p.number("gamma0_hz");
        s.preset.lambda0_vac = p.number("lambda0_nm") * 1e-9;
        s.preset.refractive_index = p.number("n");
        s.preset.alpha_dw = p.number("alpha_dw");
        s.preset.validate();
        s.pair = EmitterPair::perpendicular(0.05, s.preset);
        if (p.text("omega0_over_gamma0") != "auto") s.pair.omega0_over_gamma0 = p.number("omega0_over_gamma0");
        if (with_angles && p.has("alpha1")) s.pair.alpha1 = p.number("alpha1");
        if (with_angles && p.has("alpha2")) s.pair.alpha2 = p.number("alpha2");
        s.spec.rel_tol = p.number("rel_tol");
        s.spec.abs_tol = p.number("abs_tol");
        s.spec.window_halfwidth = p.number("window");
        s.spec.max_subdivisions = static_cast<int>(p.integer("max_subdiv"));
        s.spec.tails = p.integer("tails") != 0;
        s.spec.validate();
        return s;
    });
}

EmitterPair with_r12(EmitterPair pair, double r12) {
    pair.r12 = r12;
    guarded([&] {
        pair.validate();
        return 0;
    });
    return pair;
}

struct PointMetrics {
    double C, F, F_unsquared, N, purity;
};

PointMetrics post_selected(const EmitterPair& pair, double gamma, const DetectorArm& alice, const QuadratureSpec& spec,
                           const std::string& where) {
    const Couplings c = hybrid_levels(pair);
    const auto rho = guarded([&] {
        return tomography(pair, c, FilterPair::at_hybrid_lines(c, gamma), alice, DetectorArm::on_axis_minus_y(), spec);
    });
    if (!rho.converged) throw NumericalError("tomography integral did not converge at " + where);
    return {concurrence(rho.m), fidelity(rho.m), fidelity_unsquared(rho.m), rho.n_factor, purity(rho.m)};
}

std::string at(const std::map<std::string, double>& coords) {
    std::string s;
    for (const auto& [k, v] : coords) s += (s.empty() ? "" : ", ") + k + "=" + format_number(v);
    return s;
}

// ---------------------------------------------------------------------------

ExperimentOutput run_couplings(const ParamSet& p) {
    const Setup s = make_setup(p);
    ExperimentOutput out;
    out.table.columns = {"r12", "V", "gamma12"};
    for (double r : p.range("r12")) {
        const EmitterPair pair = with_r12(s.pair, r);
        out.table.add_row({r, coherent_coupling(pair), dissipative_coupling(pair)});
    }
    return out;
}

ExperimentOutput run_pattern(const ParamSet& p) {
    const Setup s = make_setup(p);
    const Vec3 sym = s.pair.dipole(1) + s.pair.dipole(2);
    const Vec3 anti = s.pair.dipole(1) - s.pair.dipole(2);
    if (sym.norm() < 1e-12 || anti.norm() < 1e-12)
        throw UsageError("pattern: symmetric or antisymmetric dipole vanishes for these angles");
    ExperimentOutput out;
    out.table.columns = {"theta", "phi", "pattern_sym", "pattern_anti"};
    for (double th : p.range("theta"))
        for (double ph : p.range("phi"))
            out.table.add_row({th, ph, dipole_radiation_pattern(sym, th, ph), dipole_radiation_pattern(anti, th, ph)});
    return out;
}

ExperimentOutput run_spectral_density(const ParamSet& p) {
    const Setup s = make_setup(p);
    const EmitterPair pair = with_r12(s.pair, p.number("r12"));
    const Couplings c = hybrid_levels(pair);
    const PairKernel kernel(pair, c, direction(kPi / 2, kPi / 2), {Vec3::UnitX(), Vec3::UnitZ()},
                            direction(kPi / 2, -kPi / 2), {Vec3::UnitX(), Vec3::UnitZ()});
    const auto da = p.range("detuning_a"), db = p.range("detuning_b");
    const double n2 = pair.refractive_index * pair.refractive_index;
    ExperimentOutput out;
    out.table.columns = {"detuning_a", "detuning_b", "P_xx", "P_xz", "P_zx", "P_zz",
                         "P_xx_n2", "P_xz_n2", "P_zx_n2", "P_zz_n2"};
    out.notes = {"P per unit solid angle squared and per unit (gamma0/c_medium) wavenumber squared; *_n2 columns are "
                 "scaled by n^2",
                 "photon a along +y, photon b along -y; V = " + format_number(c.V) +
                     ", gamma12 = " + format_number(c.gamma12)};
    for (double a : da)
        for (double b : db) {
            const Eigen::Matrix2cd amp = kernel(a, b);
            const double w = spectral_weight(pair, a) * spectral_weight(pair, b);
            const double pxx = w * std::norm(amp(0, 0)), pxz = w * std::norm(amp(0, 1));
            const double pzx = w * std::norm(amp(1, 0)), pzz = w * std::norm(amp(1, 1));
            out.table.add_row({a, b, pxx, pxz, pzx, pzz, n2 * pxx, n2 * pxz, n2 * pzx, n2 * pzz});
        }
    return out;
}

ExperimentOutput run_phase_map(const ParamSet& p) {
    const Setup s = make_setup(p);
    const EmitterPair pair = with_r12(s.pair, p.number("r12"));
    const Couplings c = hybrid_levels(pair);
    ExperimentOutput out;
    out.table.columns = {"detuning_a", "detuning_b", "delta"};
    out.notes = {"delta = arg(c_xx) - arg(c_zz) in (-pi, pi]; photon a along +y, photon b along -y"};
    for (double a : p.range("detuning_a"))
        for (double b : p.range("detuning_b")) {
            double d = NAN;
            try {
                d = relative_phase(pair, c, a, b);
            } catch (const UndefinedPhaseError&) {
            }
            out.table.add_row({a, b, d});
        }
    return out;
}

ExperimentOutput run_angular_map(const ParamSet& p) {
    const Setup s = make_setup(p);
    const EmitterPair pair = with_r12(s.pair, p.number("r12"));
    const Couplings c = hybrid_levels(pair);
    const auto tp = p.range("theta_p"), pp = p.range("phi_p");
    const auto grid = guarded(
        [&] { return angular_density_grid(pair, c, p.number("theta"), p.number("phi"), tp, pp, s.spec); });
    if (!grid.converged) throw NumericalError("angular density integral did not converge on the grid");
    ExperimentOutput out;
    out.table.columns = {"theta_p", "phi_p", "D"};
    for (std::size_t i = 0; i < tp.size(); ++i)
        for (std::size_t j = 0; j < pp.size(); ++j)
            out.table.add_row({tp[i], pp[j], grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
    return out;
}

ExperimentOutput run_rho(const ParamSet& p) {
    const Setup s = make_setup(p);
    const EmitterPair pair = with_r12(s.pair, p.number("r12"));
    const Couplings c = hybrid_levels(pair);
    const double gamma = p.number("gamma");
    const DetectorArm alice = guarded([&] { return DetectorArm::with_lens(p.number("theta"), p.number("phi")); });
    const auto rho = guarded([&] {
        return tomography(pair, c, FilterPair::at_hybrid_lines(c, gamma), alice, DetectorArm::on_axis_minus_y(),
                          s.spec);
    });
    if (!rho.converged) throw NumericalError("tomography integral did not converge");
    static const char* labels[4] = {"xx", "xz", "zx", "zz"};
    ExperimentOutput out;
    out.table.columns = {"quantity", "re", "im"};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out.table.add_row({std::string("rho_") + labels[i] + "_" + labels[j], format_number(rho.m(i, j).real()),
                               format_number(rho.m(i, j).imag())});
    auto scalar = [&](const std::string& name, double v) { out.table.add_row({name, format_number(v), "0"}); };
    scalar("concurrence", concurrence(rho.m));
    scalar("fidelity", fidelity(rho.m));
    scalar("fidelity_unsquared", fidelity_unsquared(rho.m));
    scalar("purity", purity(rho.m));
    scalar("N", rho.n_factor);
    scalar("V", c.V);
    scalar("gamma12", c.gamma12);
    return out;
}

double metric_value(const std::string& name, const PointMetrics& m, double n_max) {
    if (name == "C") return m.C;
    if (name == "F") return m.F;
    if (name == "F_unsquared") return m.F_unsquared;
    if (name == "N") return m.N;
    if (name == "N_rel") return m.N / n_max;
    if (name == "purity") return m.purity;
    if (name == "one_minus_C") return 1 - m.C;
    if (name == "one_minus_F") return 1 - m.F;
    if (name == "one_minus_purity") return 1 - m.purity;
    throw UsageError("unknown metric '" + name +
                     "' (choose from C, F, F_unsquared, N, N_rel, purity, one_minus_C, one_minus_F, one_minus_purity)");
}

ExperimentOutput run_sweep(const ParamSet& p) {
    const Setup s = make_setup(p);
    const auto gammas = p.range("gamma"), rs = p.range("r12");
    const auto metrics = p.list("metrics");
    PointMetrics probe{};
    for (const auto& m : metrics) metric_value(m, probe, 1.0);
    std::vector<PointMetrics> results(gammas.size() * rs.size());
    parallel_for(results.size(), [&](std::size_t idx) {
        const double g = gammas[idx / rs.size()], r = rs[idx % rs.size()];
        results[idx] = post_selected(with_r12(s.pair, r), g, DetectorArm::on_axis_plus_y(), s.spec,
                                     at({{"gamma", g}, {"r12", r}}));
    });
    double n_max = 0;
    for (const auto& m : results) n_max = std::max(n_max, m.N);
    ExperimentOutput out;
    out.table.columns = {"gamma", "r12"};
    for (const auto& m : metrics) out.table.columns.push_back(m);
    for (std::size_t idx = 0; idx < results.size(); ++idx) {
        std::vector<double> row{gammas[idx / rs.size()], rs[idx % rs.size()]};
        for (const auto& m : metrics) row.push_back(metric_value(m, results[idx], n_max));
        out.table.add_row(row);
    }
    out.notes = {"N_max = " + format_number(n_max)};
    return out;
}

ExperimentOutput run_lens_map(const ParamSet& p) {
    const Setup s = make_setup(p);
    const EmitterPair pair = with_r12(s.pair, p.number("r12"));
    const double gamma = p.number("gamma");
    const auto th = p.range("theta"), ph = p.range("phi");
    std::vector<PointMetrics> results(th.size() * ph.size());
    parallel_for(results.size(), [&](std::size_t idx) {
        const double t = th[idx / ph.size()], f = ph[idx % ph.size()];
        const DetectorArm alice = guarded([&] { return DetectorArm::with_lens(t, f); });
        results[idx] = post_selected(pair, gamma, alice, s.spec, at({{"theta", t}, {"phi", f}}));
    });
    ExperimentOutput out;
    out.table.columns = {"theta", "phi", "one_minus_F", "one_minus_C", "F_unsquared"};
    for (std::size_t idx = 0; idx < results.size(); ++idx) {
        const auto& m = results[idx];
        out.table.add_row({th[idx / ph.size()], ph[idx % ph.size()], 1 - m.F, 1 - m.C, m.F_unsquared});
    }
    return out;
}

ExperimentOutput run_dipole_sweep(const ParamSet& p) {
    const Setup s = make_setup(p, false);
    const double r12 = p.number("r12"), gamma = p.number("gamma");
    const auto alphas = p.range("alpha1");
    std::vector<PointMetrics> results(alphas.size());
    std::vector<Couplings> cs(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t i) {
        EmitterPair pair = with_r12(s.pair, r12);
        pair.alpha1 = alphas[i];
        pair.alpha2 = -alphas[i];
        cs[i] = hybrid_levels(pair);
        results[i] = post_selected(pair, gamma, DetectorArm::on_axis_plus_y(), s.spec, at({{"alpha1", alphas[i]}}));
    });
    ExperimentOutput out;
    out.table.columns = {"alpha1", "alpha2", "V", "gamma12", "one_minus_C", "one_minus_F"};
    for (std::size_t i = 0; i < alphas.size(); ++i)
        out.table.add_row({alphas[i], -alphas[i], cs[i].V, cs[i].gamma12, 1 - results[i].C, 1 - results[i].F});
    return out;
}

ExperimentOutput run_distant(const ParamSet& p) {
    const Setup s = make_setup(p);
    const double gamma = p.number("gamma");
    const auto rs = p.range("r12");
    std::vector<PointMetrics> results(rs.size());
    std::vector<Couplings> cs(rs.size());
    parallel_for(rs.size(), [&](std::size_t i) {
        const EmitterPair pair = with_r12(s.pair, rs[i]);
        cs[i] = hybrid_levels(pair);
        results[i] = post_selected(pair, gamma, DetectorArm::on_axis_plus_y(), s.spec, at({{"r12", rs[i]}}));
    });
    ExperimentOutput out;
    out.table.columns = {"r12", "V", "gamma12", "one_minus_C", "one_minus_F"};
    for (std::size_t i = 0; i < rs.size(); ++i)
        out.table.add_row({rs[i], cs[i].V, cs[i].gamma12, 1 - results[i].C, 1 - results[i].F});
    return out;
}

ExperimentOutput run_verify(const ParamSet& p) {
    const Setup s = make_setup(p);
    const EmitterPair pair = with_r12(s.pair, p.number("r12"));
    const Couplings c = hybrid_levels(pair);
    const auto seed = static_cast<std::uint64_t>(p.integer("seed"));
    const long n_pairs = p.integer("pairs");
    if (n_pairs < 1) throw UsageError("pairs must be positive");
    const double h = kPi / 2;
    const double spread = 2 * std::abs(c.V) + 3;

    ExperimentOutput out;
    out.table.columns = {"check", "value", "bound", "pass"};
    auto check = [&](const std::string& name, double value, double bound) {
        const bool ok = value <= bound;
        out.failed = out.failed || !ok;
        out.table.add_row({name, format_number(value), format_number(bound), ok ? "1" : "0"});
    };

    // Single-photon amplitudes against their closed form.
    std::vector<PhotonMode> singles = {PhotonMode{h, h, c.V, Vec3::UnitX()}, PhotonMode{h, h, -c.V, Vec3::UnitZ()}};
    for (long i = 0; i < n_pairs; ++i) singles.push_back(sample_mode(seed, static_cast<std::uint64_t>(i), spread));
    double single_err = 0;
    for (const auto& m : singles) {
        const auto tr = integrate_single_photon(pair, c, m, 10.0);
        for (std::size_t k = 0; k < tr.times.size(); ++k) {
            const auto ref = single_photon_analytic(pair, c, m, tr.times[k]);
            single_err = std::max({single_err, std::abs(tr.c_eg[k] - ref.c_eg), std::abs(tr.c_ge[k] - ref.c_ge)});
        }
    }
    check("single_photon_max_abs_error_t0_10", single_err, 1e-6);

    const PhotonMode ax{h, h, c.V, Vec3::UnitX()}, bx{h, -h, -c.V, Vec3::UnitX()};
    const PhotonMode az{h, h, c.V, Vec3::UnitZ()}, bz{h, -h, -c.V, Vec3::UnitZ()};
    check("cgg_limit_on_peak_xx_rel", verify_cgg_limit(pair, c, ax, bx).relative_deviation, 1e-6);
    check("cgg_limit_on_peak_zz_rel", verify_cgg_limit(pair, c, az, bz).relative_deviation, 1e-6);

    double random_rel = 0;
    for (long i = 0; i < n_pairs; ++i) {
        const auto a = sample_mode(seed + 1, static_cast<std::uint64_t>(2 * i), spread);
        const auto b = sample_mode(seed + 1, static_cast<std::uint64_t>(2 * i + 1), spread);
        random_rel = std::max(random_rel, verify_cgg_limit(pair, c, a, b).relative_deviation);
    }
    check("cgg_limit_random_pairs_max_rel", random_rel, 1e-6);

    const auto cross = verify_cgg_limit(pair, c, ax, bz);
    check("cross_polarized_max_abs_squared", std::max(std::norm(cross.time_domain), std::norm(cross.steady)), 1e-25);

    const auto short_time = verify_cgg_limit(pair, c, ax, bx, 1.0);
    const cd closed = cgg_time_dependent(pair, c, ax, bx, 1.0);
    check("closed_form_t1_vs_ode_rel", std::abs(closed - short_time.time_domain) / std::abs(short_time.time_domain),
          1e-8);
    const cd late = cgg_time_dependent(pair, c, ax, bx, 50.0);
    check("closed_form_t50_vs_steady_rel", std::abs(late - short_time.steady) / std::abs(short_time.steady), 1e-10);
    return out;
}

ExperimentOutput run_normalize(const ParamSet& p) {
    const Setup s = make_setup(p);
    const auto seed = static_cast<std::uint64_t>(p.integer("seed"));
    const long samples = p.integer("samples");
    ExperimentOutput out;
    out.table.columns = {"r12", "integral", "std_error", "pair_probability", "pair_std_error"};
    out.notes = {"integral runs over ordered mode pairs; pair_probability = integral/2 is the state norm"};
    for (double r : p.range("r12")) {
        const EmitterPair pair = with_r12(s.pair, r);
        const auto e = guarded([&] { return total_normalization(pair, hybrid_levels(pair), samples, seed); });
        out.table.add_row({r, e.integral, e.std_error, e.pair_probability, e.pair_std_error});
    }
    return out;
}

const ParamSpec kAlpha1{"alpha1", "0.25pi", "dipole angle of emitter 1 in the xz-plane, rad"};
const ParamSpec kAlpha2{"alpha2", "-0.25pi", "dipole angle of emitter 2 in the xz-plane, rad"};

}  // namespace

const std::vector<Experiment>& experiments() {
    static const std::vector<Experiment> list = {
        {"couplings", "coherent and dissipative couplings versus separation",
         {{"r12", "0.02:0.5:100", "separations in units of lambda0 (range)"}, kAlpha1, kAlpha2},
         run_couplings, "", "", ""},
        {"pattern", "classical radiation patterns of the symmetric and antisymmetric dipoles",
         {{"theta", "0:pi:61", "polar angles (range)"}, {"phi", "-pi:pi:121", "azimuthal angles (range)"}, kAlpha1,
          kAlpha2},
         run_pattern, "theta", "phi", "pattern_sym"},
        {"spectral-density", "two-photon spectral density at +y/-y for all polarization pairs",
         {{"r12", "0.075", "separation in units of lambda0"},
          {"detuning_a", "-6:6:121", "detunings of the +y photon (range)"},
          {"detuning_b", "-6:6:121", "detunings of the -y photon (range)"},
          kAlpha1,
          kAlpha2},
         run_spectral_density, "detuning_a", "detuning_b", "P_xx"},
        {"phase-map", "relative phase between the xx and zz amplitudes",
         {{"r12", "0.075", "separation in units of lambda0"},
          {"detuning_a", "-6:6:121", "detunings of the +y photon (range)"},
          {"detuning_b", "-6:6:121", "detunings of the -y photon (range)"},
          kAlpha1,
          kAlpha2},
         run_phase_map, "detuning_a", "detuning_b", "delta"},
        {"angular-map", "angular two-photon density with photon A fixed",
         {{"r12", "0.075", "separation in units of lambda0"},
          {"theta", "0.5pi", "polar angle of photon A"},
          {"phi", "0.5pi", "azimuthal angle of photon A"},
          {"theta_p", "0:pi:40", "polar angles of photon B (range)"},
          {"phi_p", "-pi:pi:40", "azimuthal angles of photon B (range)"},
          kAlpha1,
          kAlpha2},
         run_angular_map, "theta_p", "phi_p", "D"},
        {"rho", "post-selected polarization density matrix and its metrics",
         {{"r12", "0.05", "separation in units of lambda0"},
          {"gamma", "0.01", "filter linewidth in gamma0"},
          {"theta", "0.5pi", "Alice's polar detection angle (lens applied off axis)"},
          {"phi", "0.5pi", "Alice's azimuthal detection angle"},
          kAlpha1,
          kAlpha2},
         run_rho, "", "", ""},
        {"sweep-gamma-r12", "entanglement metrics over filter linewidth and separation",
         {{"gamma", "1e-2:10:log25", "filter linewidths in gamma0 (range)"},
          {"r12", "0.03:0.15:25", "separations in units of lambda0 (range)"},
          {"metrics", "C,F,N,purity",
           "comma list from C, F, F_unsquared, N, N_rel, purity, one_minus_C, one_minus_F, one_minus_purity"},
          kAlpha1,
          kAlpha2},
         run_sweep, "gamma", "r12", ""},
        {"lens-map", "infidelity versus Alice's detection direction behind a lens",
         {{"r12", "0.05", "separation in units of lambda0"},
          {"gamma", "0.01", "filter linewidth in gamma0"},
          {"theta", "1.2707963267948966:1.8707963267948966:13", "polar angles (range)"},
          {"phi", "1.2707963267948966:1.8707963267948966:13", "azimuthal angles (range)"},
          kAlpha1,
          kAlpha2},
         run_lens_map, "theta", "phi", "one_minus_F"},
        {"dipole-angle-sweep", "entanglement versus dipole angle alpha1 = -alpha2",
         {{"r12", "0.05", "separation in units of lambda0"},
          {"gamma", "0.01", "filter linewidth in gamma0"},
          {"alpha1", "0:0.5pi:21", "dipole angles of emitter 1 (range); alpha2 = -alpha1"}},
         run_dipole_sweep, "", "", ""},
        {"distant", "entanglement versus separation into the uncoupled regime",
         {{"r12", "0.05:3:60", "separations in units of lambda0 (range)"},
          {"gamma", "0.01", "filter linewidth in gamma0"},
          kAlpha1,
          kAlpha2},
         run_distant, "", "", ""},
        {"verify", "time-domain oracle checks of the closed-form amplitudes",
         {{"r12", "0.075", "separation in units of lambda0"},
          {"pairs", "10", "number of random mode pairs"},
          kAlpha1,
          kAlpha2},
         run_verify, "", "", ""},
        {"normalize", "Monte-Carlo normalization of the two-photon state",
         {{"r12", "0.05,0.075,0.3", "separations in units of lambda0 (range)"},
          {"samples", "200000", "Monte-Carlo samples per separation"},
          kAlpha1,
          kAlpha2},
         run_normalize, "", "", ""},
    };
    return list;
}

const Experiment& find_experiment(const std::string& name) {
    for (const auto& e : experiments())
        if (e.name == name) return e;
    throw UsageError("unknown experiment '" + name + "'");
}

std::vector<ParamSpec> params_for(const Experiment& e) {
    std::vector<ParamSpec> all = common_params();
    all.insert(all.end(), e.params.begin(), e.params.end());
    return all;
}

std::vector<std::string> header_comments(const Experiment& e, const ParamSet& params, bool timestamp) {
    std::vector<std::string> out;
    out.push_back(std::string("biphoton ") + kVersion);
    out.push_back("experiment: " + e.name);
    if (timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        out.push_back(std::string("generated: ") + buf);
    }
    for (const auto& [k, v] : params.values()) out.push_back("param " + k + " = " + v);
    const Setup s = make_setup(params, false);
    out.push_back("resolved omega0_over_gamma0 = " + format_number(s.pair.omega0_over_gamma0));
    return out;
}

Heatmap heatmap_from_table(const Table& table, const std::string& x, const std::string& y, const std::string& value,
                           bool log_scale) {
    const std::size_t ix = table.column_index(x), iy = table.column_index(y), iv = table.column_index(value);
    Heatmap m;
    std::vector<std::string> xs, ys;
    for (const auto& row : table.rows) {
        if (std::find(xs.begin(), xs.end(), row[ix]) == xs.end()) xs.push_back(row[ix]);
        if (std::find(ys.begin(), ys.end(), row[iy]) == ys.end()) ys.push_back(row[iy]);
    }
    if (xs.size() * ys.size() != table.rows.size()) throw UsageError("table is not a rectangular grid");
    for (const auto& s : xs) m.x.push_back(parse_scalar(s));
    for (const auto& s : ys) m.y.push_back(parse_scalar(s));
    for (const auto& row : table.rows) m.z.push_back(row[iv] == "nan" ? NAN : parse_scalar(row[iv]));
    m.x_label = x;
    m.y_label = y;
    m.title = value;
    m.log_scale = log_scale;
    return m;
}

}  // namespace biphoton::app
