// SPDX-License-Identifier: Apache-2.0
#include "svabf/array_model.hpp"

#include "svabf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace svabf {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Independent streams for noise and random phases so toggling one does not
// shift the other.
constexpr std::uint64_t kNoiseStream = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kPhaseStream = 0xbf58476d1ce4e5b9ULL;

} // namespace

double cos_degrees(double deg) {
    if (deg == 90.0)
        return 0.0;
    if (deg == 0.0)
        return 1.0;
    if (deg == 180.0)
        return -1.0;
    return std::cos(deg * kDegToRad);
}

void ArrayGeometry::validate() const {
    if (sensorCount < 2)
        throw ConstraintError("sensor count must be at least 2, got " + std::to_string(sensorCount));
    if (!(spacingRatio > 0.0) || !std::isfinite(spacingRatio))
        throw ConstraintError("spacing ratio d/lambda must be positive");
}

double SourceSpec::amplitude() const { return std::pow(10.0, powerDb / 20.0); }

void Scenario::validate() const {
    geometry.validate();
    if (sources.empty())
        throw ConstraintError("scenario needs at least one source");
    for (const auto& s : sources) {
        if (!(s.azimuthDeg >= 0.0 && s.azimuthDeg <= 180.0))
            throw ConstraintError("source azimuth must lie in [0, 180] degrees, got " +
                                  std::to_string(s.azimuthDeg));
        if (!std::isfinite(s.powerDb) || !std::isfinite(s.phaseRad))
            throw ConstraintError("source power and phase must be finite");
    }
    if (std::isnan(snrDb) || snrDb == -std::numeric_limits<double>::infinity())
        throw ConstraintError("SNR must be a number or +inf");
}

double Scenario::noise_variance() const {
    if (snrDb == std::numeric_limits<double>::infinity())
        return 0.0;
    double peak = 0.0;
    for (const auto& s : sources)
        peak = std::max(peak, s.amplitude());
    return peak * peak * std::pow(10.0, -snrDb / 10.0);
}

double steering_phase(const ArrayGeometry& geometry, double azimuthDeg, std::size_t m) {
    if (m >= geometry.sensorCount)
        throw SizeError("sensor index " + std::to_string(m) + " out of range for " +
                        std::to_string(geometry.sensorCount) + " sensors");
    return -2.0 * std::numbers::pi * geometry.spacingRatio * static_cast<double>(m) *
           cos_degrees(azimuthDeg);
}

ComplexVector clean_snapshot(const Scenario& scenario) {
    scenario.validate();
    const std::size_t M = scenario.geometry.sensorCount;

    std::mt19937_64 phaseRng(scenario.seed ^ kPhaseStream);
    std::uniform_real_distribution<double> phaseDist(-std::numbers::pi, std::numbers::pi);

    std::vector<cplx> x(M);
    for (const auto& src : scenario.sources) {
        const double phase = scenario.randomPhase ? phaseDist(phaseRng) : src.phaseRad;
        const cplx gain = std::polar(src.amplitude(), phase);
        for (std::size_t m = 0; m < M; ++m)
            x[m] += gain * std::polar(1.0, -steering_phase(scenario.geometry, src.azimuthDeg, m));
    }
    return ComplexVector(std::move(x));
}

ComplexVector noise_snapshot(const Scenario& scenario) {
    scenario.validate();
    const std::size_t M = scenario.geometry.sensorCount;
    std::vector<cplx> n(M);
    const double variance = scenario.noise_variance();
    if (variance == 0.0)
        return ComplexVector(std::move(n));

    std::mt19937_64 rng(scenario.seed ^ kNoiseStream);
    std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
    for (auto& v : n) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v = {re, im};
    }
    return ComplexVector(std::move(n));
}

ComplexVector synthesize_snapshot(const Scenario& scenario) {
    const auto clean = clean_snapshot(scenario);
    const auto noise = noise_snapshot(scenario);
    std::vector<cplx> x(clean.size());
    for (std::size_t m = 0; m < x.size(); ++m)
        x[m] = clean[m] + noise[m];
    return ComplexVector(std::move(x));
}

} // namespace svabf
