// SPDX-License-Identifier: Apache-2.0
//
// svabf: run SVA / conventional beamforming experiments from a scenario file.
//
//   svabf run --config scenarios/close_pair_m64.json --out out/close_pair_m64 [--methods rect,sva-joint]
//   svabf sweep --config scenarios/close_pair_m64.json --param sensorCount --values 32,64
//   svabf dump-config [--config file]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical constraint violation.

#include "svabf/errors.hpp"
#include "svabf/experiment.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConstraint = 3;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

struct CommonArgs {
    std::string config;
    std::string methods;
    std::string out;
    std::optional<std::uint64_t> seed;
    bool gnuplot = false;
};

svabf::RunConfig resolve(const CommonArgs& args) {
    svabf::RunConfig c;
    if (!args.config.empty())
        c = svabf::load_config(args.config);
    else
        c.scenario.sources.push_back({});
    if (!args.methods.empty()) {
        c.methods.clear();
        for (const auto& name : split(args.methods, ',')) {
            try {
                c.methods.push_back(svabf::Method::parse(name));
            } catch (const svabf::ConstraintError& e) {
                throw svabf::ConfigError("--methods", e.what());
            }
        }
    }
    if (!args.out.empty())
        c.outputDir = args.out;
    if (args.seed)
        c.scenario.seed = *args.seed;
    return c;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool configRequired) {
    auto* opt = cmd->add_option("--config", args.config, "scenario/run configuration (JSON)");
    if (configRequired)
        opt->required();
    cmd->add_option("--methods", args.methods,
                    "comma-separated: rect,hanning,raised-cosine:<alpha>,sva-joint,sva-separate");
    cmd->add_option("--out", args.out, "output directory (overrides output_dir)");
    cmd->add_option("--seed", args.seed, "RNG seed (overrides scenario.seed)");
    cmd->add_flag("--gnuplot", args.gnuplot, "also write a gnuplot script");
}

void warn(const svabf::RunResult& r) {
    if (r.gratingLobes)
        std::cerr << "warning: spacing ratio > 1/2, grating lobes alias into the visible region\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SVA beamforming experiments for uniform linear arrays"};
    app.require_subcommand(1);

    CommonArgs runArgs;
    auto* runCmd = app.add_subcommand("run", "beamform one scenario and write CSVs + metrics");
    add_common(runCmd, runArgs, true);

    CommonArgs sweepArgs;
    std::string param;
    std::string values;
    auto* sweepCmd = app.add_subcommand("sweep", "repeat a run over values of one parameter");
    add_common(sweepCmd, sweepArgs, true);
    sweepCmd->add_option("--param", param, "sensorCount | snrDb | dftSize")->required();
    sweepCmd->add_option("--values", values, "comma-separated values")->required();

    CommonArgs dumpArgs;
    auto* dumpCmd = app.add_subcommand("dump-config", "print the effective configuration");
    add_common(dumpCmd, dumpArgs, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*runCmd) {
            const auto config = resolve(runArgs);
            const auto result = svabf::run(config, runArgs.gnuplot);
            warn(result);
            std::cout << svabf::metrics_report(result);
        } else if (*sweepCmd) {
            const auto config = resolve(sweepArgs);
            const auto parameter = svabf::parse_sweep_parameter(param);
            std::vector<double> list;
            for (const auto& v : split(values, ',')) {
                try {
                    std::size_t used = 0;
                    list.push_back(std::stod(v, &used));
                    if (used != v.size())
                        throw std::invalid_argument(v);
                } catch (const std::exception&) {
                    throw svabf::ConfigError("--values", "not a number: '" + v + "'");
                }
            }
            const auto points = svabf::sweep(config, parameter, list, sweepArgs.gnuplot);
            if (!points.empty())
                warn(points.front().result);
            std::cout << svabf::sweep_summary_csv(parameter, points);
        } else if (*dumpCmd) {
            const auto config = resolve(dumpArgs);
            config.validate();
            std::cout << svabf::dump_config(config);
        }
    } catch (const svabf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const svabf::ConstraintError& e) {
        std::cerr << "constraint violation: " << e.what() << '\n';
        return kExitConstraint;
    } catch (const svabf::SizeError& e) {
        std::cerr << "constraint violation: " << e.what() << '\n';
        return kExitConstraint;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
