#pragma once

#include "output.hpp"
#include "params.hpp"

#include <functional>
#include <string>
#include <vector>

namespace biphoton::app {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentOutput {
    Table table;
    std::vector<std::string> notes;  // extra header comment lines
    bool failed = false;             // a verification check did not pass
};

struct Experiment {
    std::string name;
    std::string summary;
    std::vector<ParamSpec> params;  // experiment-specific; common keys are added by params_for()
    std::function<ExperimentOutput(const ParamSet&)> run;
    // Grid layout for --svg: the two coordinate columns and the default value column.
    std::string grid_x, grid_y, heat_value;
};

const std::vector<Experiment>& experiments();
const Experiment& find_experiment(const std::string& name);

// Common physics, quadrature and seed keys followed by the experiment's own keys.
std::vector<ParamSpec> params_for(const Experiment& e);

std::vector<std::string> header_comments(const Experiment& e, const ParamSet& params, bool timestamp);

// Builds a heatmap from a table whose rows enumerate an x-major grid.
Heatmap heatmap_from_table(const Table& table, const std::string& x, const std::string& y, const std::string& value,
                           bool log_scale);

}  // namespace biphoton::app
