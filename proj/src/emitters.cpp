#include "biphoton/emitters.hpp"

#include "biphoton/errors.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace biphoton {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw DomainError("preset key '" + key + "': not a number: '" + text + "'");
    }
    if (used != text.size()) throw DomainError("preset key '" + key + "': trailing characters in '" + text + "'");
    return v;
}

// (x cos x − sin x)/x³, summed as a power series near zero where the direct form cancels.
double cos_sin_bracket(double x) {
    if (std::abs(x) < 0.5) {
        const double x2 = x * x;
        double term_power = 1.0;
        double factorial = 6.0;  // (2k+1)! at k = 1
        double sum = 0;
        for (int k = 1; k < 20; ++k) {
            const double term = (k % 2 ? -1.0 : 1.0) * 2.0 * k / factorial * term_power;
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            term_power *= x2;
            factorial *= (2.0 * k + 2) * (2.0 * k + 3);
        }
        return sum;
    }
    return (x * std::cos(x) - std::sin(x)) / (x * x * x);
}

}  // namespace

void PhysicalPreset::validate() const {
    if (!(gamma0_hz > 0) || !std::isfinite(gamma0_hz)) throw DomainError("gamma0_hz must be positive");
    if (!(lambda0_vac > 0) || !std::isfinite(lambda0_vac)) throw DomainError("lambda0 must be positive");
    if (!(refractive_index >= 1) || !std::isfinite(refractive_index)) throw DomainError("refractive index must be >= 1");
    if (!(alpha_dw > 0 && alpha_dw <= 1)) throw DomainError("alpha_dw must lie in (0, 1]");
}

PhysicalPreset load_preset(std::istream& in, PhysicalPreset base) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw DomainError("preset line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key == "name") base.name = value;
        else if (key == "gamma0_hz") base.gamma0_hz = parse_number(key, value);
        else if (key == "lambda0_nm") base.lambda0_vac = parse_number(key, value) * 1e-9;
        else if (key == "n") base.refractive_index = parse_number(key, value);
        else if (key == "alpha_dw") base.alpha_dw = parse_number(key, value);
        else throw DomainError("preset line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    base.validate();
    return base;
}

PhysicalPreset preset_by_name(const std::string& name) {
    if (name == "dbatt") return PhysicalPreset::dbatt();
    throw DomainError("unknown preset '" + name + "'");
}

EmitterPair EmitterPair::perpendicular(double r12, const PhysicalPreset& preset) {
    EmitterPair p;
    p.r12 = r12;
    p.omega0_over_gamma0 = preset.omega0_over_gamma0();
    p.refractive_index = preset.refractive_index;
    p.alpha_dw = preset.alpha_dw;
    return p;
}

Vec3 EmitterPair::dipole(int which) const {
    const double a = which == 1 ? alpha1 : alpha2;
    return {std::cos(a), 0.0, std::sin(a)};
}

Vec3 EmitterPair::position(int which) const {
    const double half = 0.5 * r12;
    return origin + Vec3(0.0, 0.0, which == 1 ? half : -half);
}

void EmitterPair::validate() const {
    if (!(r12 > 0) || !std::isfinite(r12)) throw DomainError("r12 must be positive and finite");
    if (!(alpha_dw >= 0 && alpha_dw <= 1)) throw DomainError("alpha_dw must lie in [0, 1]");
    if (!(omega0_over_gamma0 > 0) || !std::isfinite(omega0_over_gamma0)) throw DomainError("omega0/gamma0 must be positive");
    if (!(refractive_index >= 1)) throw DomainError("refractive index must be >= 1");
    if (!std::isfinite(alpha1) || !std::isfinite(alpha2)) throw DomainError("dipole angles must be finite");
}

double coherent_coupling(const EmitterPair& pair) {
    pair.validate();
    const double x = pair.k0_r12();
    const double cc = std::cos(pair.alpha1) * std::cos(pair.alpha2);
    const double q = cc - 2.0 * std::sin(pair.alpha1) * std::sin(pair.alpha2);
    const double c = std::cos(x), s = std::sin(x);
    return pair.alpha_dw * 0.75 * (-cc * c / x + q * (s / (x * x) + c / (x * x * x)));
}

double dissipative_coupling(const EmitterPair& pair) {
    pair.validate();
    const double x = pair.k0_r12();
    const double cc = std::cos(pair.alpha1) * std::cos(pair.alpha2);
    const double q = cc - 2.0 * std::sin(pair.alpha1) * std::sin(pair.alpha2);
    const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return pair.alpha_dw * 1.5 * (cc * sinc + q * cos_sin_bracket(x));
}

Couplings hybrid_levels(const EmitterPair& pair) {
    Couplings c;
    c.V = coherent_coupling(pair);
    c.gamma12 = dissipative_coupling(pair);
    c.omega_plus = pair.omega0_over_gamma0 + c.V;
    c.omega_minus = pair.omega0_over_gamma0 - c.V;
    c.rate_plus = 1.0 + c.gamma12;
    c.rate_minus = 1.0 - c.gamma12;
    return c;
}

double rescale_r12_for_fixed_V(const EmitterPair& pair, double alpha_dw_new) {
    if (!(alpha_dw_new > 0 && alpha_dw_new <= 1)) throw DomainError("alpha_dw_new must lie in (0, 1]");
    const double target = coherent_coupling(pair);
    if (alpha_dw_new == pair.alpha_dw) return pair.r12;

    EmitterPair trial = pair;
    trial.alpha_dw = alpha_dw_new;
    auto h = [&](double log_r) {
        trial.r12 = std::exp(log_r);
        return coherent_coupling(trial) - target;
    };

    const double lo = std::log(1e-4), hi = std::log(10.0);
    const int steps = 4000;
    double a = lo, ha = h(lo);
    for (int i = 1; i <= steps; ++i) {
        double b = lo + (hi - lo) * i / steps;
        const double hb = h(b);
        if (ha == 0) return std::exp(a);
        if ((ha < 0) != (hb < 0)) {
            for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
                const double m = 0.5 * (a + b);
                const double hm = h(m);
                if ((hm < 0) == (ha < 0)) {
                    a = m;
                    ha = hm;
                } else {
                    b = m;
                }
            }
            const double r = std::exp(0.5 * (a + b));
            trial.r12 = r;
            if (std::abs(coherent_coupling(trial) - target) > 1e-10 * std::abs(target))
                throw NumericalError("rescale_r12_for_fixed_V: bisection did not reach tolerance");
            return r;
        }
        a = b;
        ha = hb;
    }
    throw NoRootError("no separation in [1e-4, 10] lambda0 reproduces V = " + std::to_string(target) +
                      " at alpha_dw = " + std::to_string(alpha_dw_new));
}

}  // namespace biphoton
