#include "experiments.hpp"

#include "biphoton/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>

namespace {

using namespace biphoton;
using namespace biphoton::app;

struct Invocation {
    const Experiment* experiment = nullptr;
    std::map<std::string, std::string> overrides;
    std::string config, out, svg, svg_column;
    bool svg_log = false;
    bool no_timestamp = false;
};

int execute(const Invocation& inv) {
    const Experiment& e = *inv.experiment;
    ParamSet params(params_for(e));
    if (!inv.config.empty())
        for (const auto& [k, v] : read_config_file(inv.config)) params.set(k, v, inv.config);
    for (const auto& [k, v] : inv.overrides) params.set(k, v, "--" + k);

    const auto comments = header_comments(e, params, !inv.no_timestamp);
    ExperimentOutput result = e.run(params);
    std::vector<std::string> all = comments;
    all.insert(all.end(), result.notes.begin(), result.notes.end());

    if (inv.out.empty() || inv.out == "-") {
        write_csv(std::cout, all, result.table);
    } else {
        std::ofstream f(inv.out);
        if (!f) throw UsageError("cannot write " + inv.out);
        write_csv(f, all, result.table);
        if (!f) throw UsageError("write failed for " + inv.out);
    }

    if (!inv.svg.empty()) {
        if (e.grid_x.empty()) throw UsageError("experiment '" + e.name + "' does not produce a 2D grid");
        std::string column = inv.svg_column.empty() ? e.heat_value : inv.svg_column;
        if (column.empty()) column = result.table.columns.at(2);
        std::ofstream f(inv.svg);
        if (!f) throw UsageError("cannot write " + inv.svg);
        write_svg_heatmap(f, heatmap_from_table(result.table, e.grid_x, e.grid_y, column, inv.svg_log));
    }
    if (result.failed) {
        std::cerr << "biphoton: " << e.name << ": one or more checks failed\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Two-emitter polarization-entangled photon pair simulator"};
    cli.set_version_flag("--version", std::string(kVersion));
    cli.require_subcommand(1);

    Invocation inv;
    // One value slot per experiment/key so subcommands never share storage.
    std::vector<std::unique_ptr<std::map<std::string, std::string>>> slots;
    std::vector<std::pair<CLI::App*, const Experiment*>> subs;

    for (const auto& e : experiments()) {
        CLI::App* sub = cli.add_subcommand(e.name, e.summary);
        slots.push_back(std::make_unique<std::map<std::string, std::string>>());
        auto& slot = *slots.back();
        for (const auto& p : params_for(e)) {
            sub->add_option("--" + p.key, slot[p.key], p.help)->default_str(p.default_value)->take_last();
        }
        sub->add_option("--config", inv.config, "file of 'key = value' lines applied before command-line options");
        sub->add_option("--out,-o", inv.out, "CSV output path (default: stdout)");
        sub->add_option("--svg", inv.svg, "also write an SVG heatmap of the grid");
        sub->add_option("--svg-column", inv.svg_column, "column shown in the heatmap");
        sub->add_flag("--svg-log", inv.svg_log, "logarithmic colour scale");
        sub->add_flag("--no-timestamp", inv.no_timestamp, "omit the generation time from the header");
        subs.emplace_back(sub, &e);
    }

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = cli.exit(err);
        return code == 0 ? 0 : 2;
    }

    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (!subs[i].first->parsed()) continue;
        inv.experiment = subs[i].second;
        for (const auto& p : params_for(*inv.experiment))
            if (subs[i].first->count("--" + p.key) > 0) inv.overrides[p.key] = slots[i]->at(p.key);
    }

    try {
        return execute(inv);
    } catch (const UsageError& err) {
        std::cerr << "biphoton: " << err.what() << "\n";
        return 2;
    } catch (const DomainError& err) {
        std::cerr << "biphoton: " << err.what() << "\n";
        return 2;
    } catch (const NumericalError& err) {
        std::cerr << "biphoton: numerical failure: " << err.what() << "\n";
        return 3;
    } catch (const NoRootError& err) {
        std::cerr << "biphoton: " << err.what() << "\n";
        return 3;
    }
}
