// SPDX-License-Identifier: Apache-2.0
#include "svabf/experiment.hpp"

#include "svabf/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>
#include <thread>

namespace svabf {

using nlohmann::json;

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string compact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> known) {
    for (const auto& [key, _] : obj.items()) {
        const bool ok =
            std::any_of(known.begin(), known.end(), [&](const char* k) { return key == k; });
        if (!ok)
            throw ConfigError(where.empty() ? key : where + "." + key, "unknown key");
    }
}

const json& require_object(const json& parent, const char* key, const std::string& where) {
    if (!parent.contains(key))
        throw ConfigError(where, std::string("missing required key '") + key + "'");
    const auto& v = parent.at(key);
    if (!v.is_object())
        throw ConfigError(where, "expected an object");
    return v;
}

double get_number(const json& obj, const char* key, const std::string& where, double fallback) {
    if (!obj.contains(key))
        return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(where, "expected a number");
    return v.get<double>();
}

std::uint64_t get_unsigned(const json& obj, const char* key, const std::string& where,
                           std::uint64_t fallback) {
    if (!obj.contains(key))
        return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_unsigned())
        throw ConfigError(where, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

bool get_bool(const json& obj, const char* key, const std::string& where, bool fallback) {
    if (!obj.contains(key))
        return fallback;
    const auto& v = obj.at(key);
    if (!v.is_boolean())
        throw ConfigError(where, "expected true or false");
    return v.get<bool>();
}

double get_snr(const json& obj, const std::string& where) {
    if (!obj.contains("snr_db"))
        return std::numeric_limits<double>::infinity();
    const auto& v = obj.at("snr_db");
    if (v.is_string()) {
        if (v.get<std::string>() == "inf")
            return std::numeric_limits<double>::infinity();
        throw ConfigError(where, "expected a number or \"inf\"");
    }
    if (!v.is_number())
        throw ConfigError(where, "expected a number or \"inf\"");
    return v.get<double>();
}

Scenario parse_scenario(const json& j) {
    reject_unknown(j, "scenario",
                   {"sensor_count", "spacing_ratio", "sources", "snr_db", "seed", "random_phase"});
    Scenario s;
    s.geometry.sensorCount = static_cast<std::size_t>(
        get_unsigned(j, "sensor_count", "scenario.sensor_count", s.geometry.sensorCount));
    s.geometry.spacingRatio =
        get_number(j, "spacing_ratio", "scenario.spacing_ratio", s.geometry.spacingRatio);
    s.snrDb = get_snr(j, "scenario.snr_db");
    s.seed = get_unsigned(j, "seed", "scenario.seed", s.seed);
    s.randomPhase = get_bool(j, "random_phase", "scenario.random_phase", s.randomPhase);

    if (!j.contains("sources"))
        throw ConfigError("scenario.sources", "missing required key");
    const auto& list = j.at("sources");
    if (!list.is_array())
        throw ConfigError("scenario.sources", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "scenario.sources[" + std::to_string(i) + "]";
        const auto& src = list[i];
        if (!src.is_object())
            throw ConfigError(where, "expected an object");
        reject_unknown(src, where, {"azimuth_deg", "power_db", "phase_rad"});
        if (!src.contains("azimuth_deg"))
            throw ConfigError(where + ".azimuth_deg", "missing required key");
        SourceSpec spec;
        spec.azimuthDeg = get_number(src, "azimuth_deg", where + ".azimuth_deg", 0.0);
        spec.powerDb = get_number(src, "power_db", where + ".power_db", 0.0);
        spec.phaseRad = get_number(src, "phase_rad", where + ".phase_rad", 0.0);
        s.sources.push_back(spec);
    }
    return s;
}

json scenario_json(const Scenario& s) {
    json sources = json::array();
    for (const auto& src : s.sources)
        sources.push_back(
            {{"azimuth_deg", src.azimuthDeg}, {"power_db", src.powerDb}, {"phase_rad", src.phaseRad}});
    json snr = std::isinf(s.snrDb) ? json("inf") : json(s.snrDb);
    return {{"sensor_count", s.geometry.sensorCount},
            {"spacing_ratio", s.geometry.spacingRatio},
            {"sources", sources},
            {"snr_db", snr},
            {"seed", s.seed},
            {"random_phase", s.randomPhase}};
}

std::vector<double> source_angles(const Scenario& s) {
    std::vector<double> a;
    for (const auto& src : s.sources)
        a.push_back(src.azimuthDeg);
    return a;
}

MethodReport measure(const RunConfig& config, Beampattern pattern) {
    const auto& a = config.analysis;
    const auto angles = source_angles(config.scenario);

    MethodReport rep{pattern.method, {}, {}, kFloorDb, {}, {}};
    rep.metrics = analyze_pattern(pattern, angles, a.minProminenceDb);
    const double peak = pattern.peak_magnitude();
    rep.peakLevelDb = peak > 0.0 ? 20.0 * std::log10(peak) : kFloorDb;

    for (const double az : angles) {
        double level = kFloorDb;
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            if (std::abs(pattern.anglesDeg[i] - az) <= a.detectWindowDeg)
                level = std::max(level, pattern.absolute_level_db(i));
        }
        rep.sources.push_back(
            {az, level, detects_target(pattern, az, a.detectMaxLevelDb, a.detectWindowDeg)});
    }

    std::vector<double> sorted(angles);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        rep.pairs.push_back({sorted[i - 1], sorted[i],
                             resolvability(pattern, sorted[i - 1], sorted[i], a.minDipDb)});

    rep.pattern = std::move(pattern);
    return rep;
}

std::string point_dir_name(SweepParameter p, double value) {
    return to_string(p) + "_" + compact(value);
}

} // namespace

void RunConfig::validate() const {
    if (!(angleStepDeg > 0.0) || !std::isfinite(angleStepDeg))
        throw ConfigError("angle_step_deg", "must be positive");
    if (dftSize == 0)
        throw ConfigError("dft_size", "must be positive");
    if (methods.empty())
        throw ConfigError("methods", "at least one method is required");
    if (!(denomEpsilon > 0.0))
        throw ConfigError("denom_epsilon", "must be positive");
    if (!(analysis.detectWindowDeg > 0.0))
        throw ConfigError("analysis.detect_window_deg", "must be positive");
    if (scenario.sources.empty())
        throw ConfigError("scenario.sources", "at least one source is required");
    try {
        scenario.validate();
    } catch (const ConstraintError& e) {
        throw ConfigError("scenario", e.what());
    }
    if (dftSize < scenario.geometry.sensorCount)
        throw ConfigError("dft_size", "must be at least the sensor count");
    const bool anySva = std::any_of(methods.begin(), methods.end(),
                                    [](const Method& m) { return m.is_sva(); });
    if (anySva)
        padding_factor(dftSize, scenario.geometry.sensorCount);
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.scenario == b.scenario && a.methods == b.methods && a.dftSize == b.dftSize &&
           a.angleStepDeg == b.angleStepDeg && a.outputDir == b.outputDir &&
           a.emitAlphaTrace == b.emitAlphaTrace && a.denomEpsilon == b.denomEpsilon &&
           a.analysis == b.analysis;
}

RunConfig parse_config(const std::string& jsonText) {
    json j;
    try {
        j = json::parse(jsonText);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("<root>", "expected a JSON object");
    reject_unknown(j, "",
                   {"scenario", "methods", "dft_size", "angle_step_deg", "output_dir",
                    "emit_alpha_trace", "denom_epsilon", "analysis"});

    RunConfig c;
    c.scenario = parse_scenario(require_object(j, "scenario", "scenario"));
    if (j.contains("methods")) {
        const auto& list = j.at("methods");
        if (!list.is_array())
            throw ConfigError("methods", "expected an array of method names");
        c.methods.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string where = "methods[" + std::to_string(i) + "]";
            if (!list[i].is_string())
                throw ConfigError(where, "expected a method name");
            try {
                c.methods.push_back(Method::parse(list[i].get<std::string>()));
            } catch (const ConstraintError& e) {
                throw ConfigError(where, e.what());
            }
        }
    }
    c.dftSize = static_cast<std::size_t>(get_unsigned(j, "dft_size", "dft_size", c.dftSize));
    c.angleStepDeg = get_number(j, "angle_step_deg", "angle_step_deg", c.angleStepDeg);
    if (j.contains("output_dir")) {
        if (!j.at("output_dir").is_string())
            throw ConfigError("output_dir", "expected a path string");
        c.outputDir = j.at("output_dir").get<std::string>();
    }
    c.emitAlphaTrace = get_bool(j, "emit_alpha_trace", "emit_alpha_trace", c.emitAlphaTrace);
    c.denomEpsilon = get_number(j, "denom_epsilon", "denom_epsilon", c.denomEpsilon);
    if (j.contains("analysis")) {
        const auto& a = require_object(j, "analysis", "analysis");
        reject_unknown(a, "analysis",
                       {"min_prominence_db", "min_dip_db", "detect_window_deg",
                        "detect_max_level_db"});
        auto& o = c.analysis;
        o.minProminenceDb =
            get_number(a, "min_prominence_db", "analysis.min_prominence_db", o.minProminenceDb);
        o.minDipDb = get_number(a, "min_dip_db", "analysis.min_dip_db", o.minDipDb);
        o.detectWindowDeg =
            get_number(a, "detect_window_deg", "analysis.detect_window_deg", o.detectWindowDeg);
        o.detectMaxLevelDb = get_number(a, "detect_max_level_db", "analysis.detect_max_level_db",
                                        o.detectMaxLevelDb);
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("--config", "cannot open " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string dump_config(const RunConfig& c) {
    json methods = json::array();
    for (const auto& m : c.methods)
        methods.push_back(m.name());
    const json j = {{"scenario", scenario_json(c.scenario)},
                    {"methods", methods},
                    {"dft_size", c.dftSize},
                    {"angle_step_deg", c.angleStepDeg},
                    {"output_dir", c.outputDir.string()},
                    {"emit_alpha_trace", c.emitAlphaTrace},
                    {"denom_epsilon", c.denomEpsilon},
                    {"analysis",
                     {{"min_prominence_db", c.analysis.minProminenceDb},
                      {"min_dip_db", c.analysis.minDipDb},
                      {"detect_window_deg", c.analysis.detectWindowDeg},
                      {"detect_max_level_db", c.analysis.detectMaxLevelDb}}}};
    return j.dump(2) + "\n";
}

RunResult evaluate(const RunConfig& config) {
    config.validate();
    const auto snapshot = synthesize_snapshot(config.scenario);
    const auto grid = AngleGrid::uniform(config.angleStepDeg);

    RunResult result;
    result.gratingLobes = config.scenario.geometry.grating_lobes();
    for (const auto& m : config.methods) {
        auto pattern = form_beampattern(snapshot, config.scenario.geometry, grid, m,
                                        config.dftSize, config.denomEpsilon);
        result.methods.push_back(measure(config, std::move(pattern)));
    }
    return result;
}

std::string pattern_csv(const Beampattern& pattern, bool withAlpha) {
    const bool alpha = withAlpha && !pattern.alphaTrace.empty();
    std::string out = alpha ? "angle_deg,power_db,alpha\n" : "angle_deg,power_db\n";
    out.reserve(out.size() + pattern.size() * 40);
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        out += fixed6(pattern.anglesDeg[i]);
        out += ',';
        out += fixed6(pattern.powerDb[i]);
        if (alpha) {
            out += ',';
            out += fixed6(pattern.alphaTrace[i]);
        }
        out += '\n';
    }
    return out;
}

std::string metrics_report(const RunResult& result) {
    std::ostringstream os;
    os << "grating_lobes=" << (result.gratingLobes ? "true" : "false") << '\n';
    for (const auto& m : result.methods) {
        const std::string p = m.method.name() + ".";
        os << p << "peak_level_db=" << fixed6(m.peakLevelDb) << '\n';
        os << p << "peak_count=" << m.metrics.peaks.size() << '\n';
        os << p << "mainlobe_width_deg=" << fixed6(m.metrics.mainlobeWidthDeg) << '\n';
        os << p << "peak_sidelobe_db=" << fixed6(m.metrics.peakSidelobeDb) << '\n';
        os << p << "noise_floor_db=" << fixed6(m.metrics.noiseFloorDb) << '\n';
        for (const auto& s : m.sources) {
            os << p << "source_level_db@" << fixed6(s.azimuthDeg) << '=' << fixed6(s.levelDb) << '\n';
            os << p << "detected@" << fixed6(s.azimuthDeg) << '=' << (s.detected ? "true" : "false")
               << '\n';
        }
        for (const auto& pr : m.pairs)
            os << p << "resolved@" << fixed6(pr.angleADeg) << ':' << fixed6(pr.angleBDeg) << '='
               << (pr.resolved ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string gnuplot_script(const RunResult& result) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set xlabel 'azimuth (deg)'\n"
       << "set ylabel 'power (dB)'\n"
       << "set xrange [0:180]\n"
       << "set yrange [-100:5]\n"
       << "set key bottom right\n"
       << "plot ";
    for (std::size_t i = 0; i < result.methods.size(); ++i) {
        const auto stem = method_file_stem(result.methods[i].method);
        os << (i ? ", \\\n     " : "") << "'" << stem << ".csv' skip 1 using 1:2 with lines title '"
           << result.methods[i].method.name() << "'";
    }
    os << '\n';
    return os.str();
}

std::string method_file_stem(const Method& method) {
    auto name = method.name();
    std::replace(name.begin(), name.end(), ':', '-');
    return name;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
    static std::atomic<unsigned> counter{0};
    auto tmp = path;
    tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) +
           "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out)
            throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

RunResult run(const RunConfig& config, bool withGnuplot) {
    auto result = evaluate(config);
    std::filesystem::create_directories(config.outputDir);
    for (const auto& m : result.methods)
        write_atomically(config.outputDir / (method_file_stem(m.method) + ".csv"),
                         pattern_csv(m.pattern, config.emitAlphaTrace));
    write_atomically(config.outputDir / "metrics.txt", metrics_report(result));
    if (withGnuplot)
        write_atomically(config.outputDir / "plot.gp", gnuplot_script(result));
    return result;
}

SweepParameter parse_sweep_parameter(const std::string& name) {
    if (name == "sensorCount")
        return SweepParameter::SensorCount;
    if (name == "snrDb")
        return SweepParameter::SnrDb;
    if (name == "dftSize")
        return SweepParameter::DftSize;
    throw ConfigError("--param", "unknown sweep parameter '" + name +
                                     "' (expected sensorCount, snrDb or dftSize)");
}

std::string to_string(SweepParameter p) {
    switch (p) {
    case SweepParameter::SensorCount:
        return "sensorCount";
    case SweepParameter::SnrDb:
        return "snrDb";
    case SweepParameter::DftSize:
        return "dftSize";
    }
    return "unknown";
}

RunConfig with_parameter(RunConfig config, SweepParameter parameter, double value) {
    const auto as_count = [&](const char* what) {
        if (!(value >= 1.0) || value != std::floor(value) || value > 1e9)
            throw ConfigError("--values", std::string(what) + " must be a positive integer, got " +
                                              compact(value));
        return static_cast<std::size_t>(value);
    };
    switch (parameter) {
    case SweepParameter::SensorCount:
        config.scenario.geometry.sensorCount = as_count("sensorCount");
        break;
    case SweepParameter::SnrDb:
        config.scenario.snrDb = value;
        break;
    case SweepParameter::DftSize:
        config.dftSize = as_count("dftSize");
        break;
    }
    return config;
}

std::vector<SweepPoint> sweep(const RunConfig& config, SweepParameter parameter,
                              const std::vector<double>& values, bool withGnuplot) {
    if (values.empty())
        throw ConfigError("--values", "at least one sweep value is required");
    std::vector<RunConfig> configs;
    for (const double v : values) {
        auto c = with_parameter(config, parameter, v);
        c.outputDir = config.outputDir / point_dir_name(parameter, v);
        c.validate();
        configs.push_back(std::move(c));
    }

    std::vector<std::future<RunResult>> jobs;
    for (const auto& c : configs)
        jobs.push_back(std::async(std::launch::async, [&c, withGnuplot] { return run(c, withGnuplot); }));

    std::vector<SweepPoint> points;
    for (std::size_t i = 0; i < jobs.size(); ++i)
        points.push_back({values[i], jobs[i].get()});

    std::filesystem::create_directories(config.outputDir);
    write_atomically(config.outputDir / ("sweep_" + to_string(parameter) + ".csv"),
                     sweep_summary_csv(parameter, points));
    return points;
}

std::string sweep_summary_csv(SweepParameter parameter, const std::vector<SweepPoint>& points) {
    std::ostringstream os;
    os << to_string(parameter)
       << ",method,peak_level_db,mainlobe_width_deg,peak_sidelobe_db,noise_floor_db,peak_count,"
          "resolved_pairs,detected_sources\n";
    for (const auto& pt : points) {
        for (const auto& m : pt.result.methods) {
            const auto resolved = std::count_if(m.pairs.begin(), m.pairs.end(),
                                                [](const PairReport& p) { return p.resolved; });
            const auto detected = std::count_if(m.sources.begin(), m.sources.end(),
                                                [](const SourceReport& s) { return s.detected; });
            os << fixed6(pt.value) << ',' << m.method.name() << ',' << fixed6(m.peakLevelDb) << ','
               << fixed6(m.metrics.mainlobeWidthDeg) << ',' << fixed6(m.metrics.peakSidelobeDb)
               << ',' << fixed6(m.metrics.noiseFloorDb) << ',' << m.metrics.peaks.size() << ','
               << resolved << ',' << detected << '\n';
        }
    }
    return os.str();
}

} // namespace svabf
