#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace biphoton::app {

// Thrown for malformed command lines, ranges, config files and unknown keys (exit status 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "x", "a,b,c", "start:stop:N" or "start:stop:logN". Numbers may carry a "pi" factor ("0.5pi", "-pi").
std::vector<double> parse_range(const std::string& text);
double parse_scalar(const std::string& text);

struct ParamSpec {
    std::string key;
    std::string default_value;
    std::string help;
};

// Resolved key → value strings. Iteration order is alphabetical, so echoes are stable.
class ParamSet {
public:
    ParamSet() = default;
    ParamSet(const std::vector<ParamSpec>& specs);

    // Applies an override; unknown keys throw UsageError naming `origin`.
    void set(const std::string& key, const std::string& value, const std::string& origin);
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    const std::string& text(const std::string& key) const;
    double number(const std::string& key) const;
    long integer(const std::string& key) const;
    std::vector<double> range(const std::string& key) const;
    std::vector<std::string> list(const std::string& key) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

// Reads "key = value" lines; '#' starts a comment line.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

}  // namespace biphoton::app
