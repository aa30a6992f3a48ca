// SPDX-License-Identifier: Apache-2.0
//
// Scenario-driven batch runs: config parsing, beampattern CSVs, metric
// reports and parameter sweeps.
//
// Config files are JSON:
//
//   {
//     "scenario": {
//       "sensor_count": 64, "spacing_ratio": 0.5,
//       "sources": [ {"azimuth_deg": 90.0, "power_db": 0.0, "phase_rad": 0.0} ],
//       "snr_db": "inf", "seed": 1, "random_phase": false
//     },
//     "methods": ["rect", "hanning", "sva-joint", "sva-separate"],
//     "dft_size": 1024, "angle_step_deg": 0.1, "output_dir": "out",
//     "emit_alpha_trace": true, "denom_epsilon": 1e-12,
//     "analysis": { "min_prominence_db": 3.0, "min_dip_db": 3.0,
//                   "detect_window_deg": 1.0, "detect_max_level_db": -10.0 }
//   }
//
// Every key except "scenario.sources" has a default. Unknown keys are errors.
#pragma once

#include "svabf/array_model.hpp"
#include "svabf/beamformer.hpp"
#include "svabf/metrics.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace svabf {

struct AnalysisOptions {
    double minProminenceDb = 3.0;
    double minDipDb = 3.0;
    double detectWindowDeg = 1.0;
    double detectMaxLevelDb = -10.0;

    friend bool operator==(const AnalysisOptions&, const AnalysisOptions&) = default;
};

struct RunConfig {
    Scenario scenario;
    std::vector<Method> methods{{MethodKind::Rect, 0.0},
                                {MethodKind::Hanning, 0.5},
                                {MethodKind::SvaJointly, 0.0},
                                {MethodKind::SvaSeparately, 0.0}};
    std::size_t dftSize = 1024;
    double angleStepDeg = 0.1;
    std::filesystem::path outputDir = "out";
    bool emitAlphaTrace = true;
    double denomEpsilon = 1e-12;
    AnalysisOptions analysis;

    /// Throws ConfigError for malformed values and ConstraintError when an
    /// SVA method is requested with N not a multiple of M.
    void validate() const;
};

bool operator==(const RunConfig& a, const RunConfig& b);

RunConfig parse_config(const std::string& jsonText);
RunConfig load_config(const std::filesystem::path& path);
/// Canonical JSON; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& config);

struct SourceReport {
    double azimuthDeg;
    /// Highest un-normalised level (dB) within the detection window.
    double levelDb;
    bool detected;
};

struct PairReport {
    double angleADeg;
    double angleBDeg;
    bool resolved;
};

struct MethodReport {
    Method method;
    Beampattern pattern;
    PatternMetrics metrics;
    /// 20 log10 max|response|, not normalised.
    double peakLevelDb;
    std::vector<SourceReport> sources;
    /// Azimuth-adjacent source pairs.
    std::vector<PairReport> pairs;
};

struct RunResult {
    std::vector<MethodReport> methods;
    bool gratingLobes = false;
};

/// Pure part of a run: synthesize, beamform, measure. No file I/O.
RunResult evaluate(const RunConfig& config);

/// `angle_deg,power_db[,alpha]` with 6-decimal fixed formatting.
std::string pattern_csv(const Beampattern& pattern, bool withAlpha);
/// One `name=value` line per metric.
std::string metrics_report(const RunResult& result);
std::string gnuplot_script(const RunResult& result);

/// File stem used for a method's CSV (':' is not portable in file names).
std::string method_file_stem(const Method& method);

/// Writes `content` to a temporary sibling and renames it over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& content);

/// evaluate() plus output files: one CSV per method, metrics.txt and, when
/// requested, plot.gp.
RunResult run(const RunConfig& config, bool withGnuplot = false);

enum class SweepParameter { SensorCount, SnrDb, DftSize };

SweepParameter parse_sweep_parameter(const std::string& name);
std::string to_string(SweepParameter p);

struct SweepPoint {
    double value;
    RunResult result;
};

/// Runs one point per value (concurrently), each into
/// `<outputDir>/<param>_<value>/`, and writes `<outputDir>/sweep_<param>.csv`.
std::vector<SweepPoint> sweep(const RunConfig& config, SweepParameter parameter,
                              const std::vector<double>& values, bool withGnuplot = false);

std::string sweep_summary_csv(SweepParameter parameter, const std::vector<SweepPoint>& points);

/// Config with `parameter` set to `value`.
RunConfig with_parameter(RunConfig config, SweepParameter parameter, double value);

} // namespace svabf
