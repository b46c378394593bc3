#include "params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace biphoton::app {

namespace {

constexpr double kPiValue = 3.14159265358979323846;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

long parse_count(const std::string& text, const std::string& whole) {
    std::size_t used = 0;
    long n = 0;
    try {
        n = std::stol(text, &used);
    } catch (const std::exception&) {
        throw UsageError("range '" + whole + "': bad point count '" + text + "'");
    }
    if (used != text.size() || n < 1) throw UsageError("range '" + whole + "': bad point count '" + text + "'");
    return n;
}

}  // namespace

double parse_scalar(const std::string& raw) {
    std::string t = trim(raw);
    if (t.empty()) throw UsageError("empty number");
    double factor = 1.0;
    if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
        factor = kPiValue;
        t = t.substr(0, t.size() - 2);
        if (t.empty() || t == "+") return factor;
        if (t == "-") return -factor;
    }
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + raw + "'");
    }
    if (used != t.size() || !std::isfinite(v)) throw UsageError("not a number: '" + raw + "'");
    return v * factor;
}

std::vector<double> parse_range(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) {
        std::vector<double> out;
        for (const auto& p : split(text, ',')) out.push_back(parse_scalar(p));
        if (out.empty()) throw UsageError("empty range");
        return out;
    }
    if (parts.size() != 3) throw UsageError("range '" + text + "': expected start:stop:N or start:stop:logN");
    const double a = parse_scalar(parts[0]), b = parse_scalar(parts[1]);
    const bool log_spaced = parts[2].rfind("log", 0) == 0;
    const long n = parse_count(log_spaced ? parts[2].substr(3) : parts[2], text);
    std::vector<double> out(static_cast<std::size_t>(n));
    if (log_spaced && !(a > 0 && b > 0)) throw UsageError("range '" + text + "': log spacing needs positive bounds");
    for (long i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        out[static_cast<std::size_t>(i)] =
            log_spaced ? std::exp(std::log(a) + f * (std::log(b) - std::log(a))) : a + f * (b - a);
    }
    out.front() = a;
    if (n > 1) out.back() = b;
    return out;
}

ParamSet::ParamSet(const std::vector<ParamSpec>& specs) {
    for (const auto& s : specs) values_[s.key] = s.default_value;
}

void ParamSet::set(const std::string& key, const std::string& value, const std::string& origin) {
    auto it = values_.find(key);
    if (it == values_.end()) throw UsageError(origin + ": unknown parameter '" + key + "'");
    it->second = value;
}

const std::string& ParamSet::text(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::logic_error("parameter '" + key + "' is not declared");
    return it->second;
}

double ParamSet::number(const std::string& key) const {
    try {
        return parse_scalar(text(key));
    } catch (const UsageError& e) {
        throw UsageError("parameter '" + key + "': " + e.what());
    }
}

long ParamSet::integer(const std::string& key) const {
    const double v = number(key);
    if (v != std::floor(v) || std::abs(v) > 9e15) throw UsageError("parameter '" + key + "' must be an integer");
    return static_cast<long>(v);
}

std::vector<double> ParamSet::range(const std::string& key) const {
    try {
        return parse_range(text(key));
    } catch (const UsageError& e) {
        throw UsageError("parameter '" + key + "': " + e.what());
    }
}

std::vector<std::string> ParamSet::list(const std::string& key) const {
    std::vector<std::string> out;
    for (auto& s : split(text(key), ','))
        if (!s.empty()) out.push_back(s);
    return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
        out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return out;
}

}  // namespace biphoton::app
