// SPDX-License-Identifier: Apache-2.0
#include "svabf/beamformer.hpp"

#include "svabf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace svabf {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

void check_snapshot(const ComplexVector& snapshot, const ArrayGeometry& geometry) {
    geometry.validate();
    if (snapshot.size() != geometry.sensorCount)
        throw SizeError("snapshot has " + std::to_string(snapshot.size()) + " samples for " +
                        std::to_string(geometry.sensorCount) + " sensors");
}

double to_db(double magnitude, double reference) {
    if (magnitude == 0.0 || reference == 0.0)
        return kFloorDb;
    return std::max(kFloorDb, 20.0 * std::log10(magnitude / reference));
}

Beampattern sample_spectrum(const ComplexSpectrum& spectrum, const ArrayGeometry& geometry,
                            const AngleGrid& angles, const std::vector<double>* alphas,
                            const Method& method) {
    const BinAngleMap map(spectrum.dft_size(), geometry.spacingRatio);
    Beampattern p;
    p.method = method;
    p.anglesDeg = angles.degrees();
    p.response.reserve(angles.size());
    if (alphas)
        p.alphaTrace.reserve(angles.size());
    for (const double phi : p.anglesDeg) {
        const auto k = map.angle_to_bin(phi);
        p.response.push_back(spectrum.at(k));
        if (alphas)
            p.alphaTrace.push_back((*alphas)[spectrum.wrap(k)]);
    }

    const double peak = p.peak_magnitude();
    p.powerDb.reserve(p.response.size());
    for (const auto& r : p.response)
        p.powerDb.push_back(to_db(std::abs(r), peak));
    return p;
}

} // namespace

AngleGrid::AngleGrid(std::vector<double> degrees) : degrees_(std::move(degrees)) {
    if (degrees_.empty())
        throw ConstraintError("angle grid is empty");
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
        const double a = degrees_[i];
        if (!(a >= 0.0 && a <= 180.0))
            throw ConstraintError("angle " + std::to_string(a) + " outside [0, 180] degrees");
        if (i > 0 && !(a > degrees_[i - 1]))
            throw ConstraintError("angle grid must be strictly increasing");
    }
}

AngleGrid AngleGrid::uniform(double stepDeg, double loDeg, double hiDeg) {
    if (!(stepDeg > 0.0))
        throw ConstraintError("angle step must be positive");
    if (!(hiDeg >= loDeg))
        throw ConstraintError("angle range is empty");
    // Index-based generation keeps every grid point within one rounding of
    // lo + i * step; the tolerance admits hi when it sits on the lattice.
    const auto count = static_cast<std::size_t>(std::floor((hiDeg - loDeg) / stepDeg + 1e-9)) + 1;
    std::vector<double> deg(count);
    for (std::size_t i = 0; i < count; ++i)
        deg[i] = std::min(hiDeg, loDeg + static_cast<double>(i) * stepDeg);
    // Decimal steps such as 0.1 land on values like 90.00000000000001; snap
    // to the nearest 1e-9 so broadside and endfire are hit exactly.
    for (auto& d : deg)
        d = std::round(d * 1e9) / 1e9;
    return AngleGrid(std::move(deg));
}

BinAngleMap::BinAngleMap(std::size_t dftSize, double spacingRatio)
    : dftSize_(dftSize), spacingRatio_(spacingRatio) {
    if (dftSize == 0)
        throw ConstraintError("DFT size must be positive");
    if (!(spacingRatio > 0.0))
        throw ConstraintError("spacing ratio must be positive");
}

std::int64_t BinAngleMap::max_visible_bin() const noexcept {
    return static_cast<std::int64_t>(std::floor(spacingRatio_ * static_cast<double>(dftSize_)));
}

std::int64_t BinAngleMap::angle_to_bin(double azimuthDeg) const {
    if (!(azimuthDeg >= 0.0 && azimuthDeg <= 180.0))
        throw ConstraintError("azimuth " + std::to_string(azimuthDeg) +
                              " outside [0, 180] degrees");
    const double v = static_cast<double>(dftSize_) * cos_degrees(azimuthDeg) * spacingRatio_;
    return static_cast<std::int64_t>(std::round(v));
}

double BinAngleMap::bin_to_angle(std::int64_t k) const {
    const double limit = spacingRatio_ * static_cast<double>(dftSize_);
    if (std::abs(static_cast<double>(k)) > limit)
        throw ConstraintError("bin " + std::to_string(k) + " outside the visible region |k| <= " +
                              std::to_string(limit));
    if (k == 0)
        return 90.0;
    const double c = std::clamp(static_cast<double>(k) / limit, -1.0, 1.0);
    return std::acos(c) * kRadToDeg;
}

std::string Method::name() const {
    switch (kind) {
    case MethodKind::Rect:
        return "rect";
    case MethodKind::Hanning:
        return "hanning";
    case MethodKind::RaisedCosine: {
        std::ostringstream os;
        os << "raised-cosine:" << alpha;
        return os.str();
    }
    case MethodKind::SvaJointly:
        return "sva-joint";
    case MethodKind::SvaSeparately:
        return "sva-separate";
    }
    return "unknown";
}

Method Method::parse(std::string_view name) {
    if (name == "rect")
        return {MethodKind::Rect, 0.0};
    if (name == "hanning")
        return {MethodKind::Hanning, 0.5};
    if (name == "sva-joint")
        return {MethodKind::SvaJointly, 0.0};
    if (name == "sva-separate")
        return {MethodKind::SvaSeparately, 0.0};
    constexpr std::string_view prefix = "raised-cosine:";
    if (name.starts_with(prefix)) {
        const auto text = std::string(name.substr(prefix.size()));
        std::size_t used = 0;
        double alpha = 0.0;
        try {
            alpha = std::stod(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size())
            throw ConstraintError("cannot parse raised-cosine alpha in '" + std::string(name) + "'");
        if (!(alpha >= 0.0 && alpha <= 0.5))
            throw ConstraintError("raised-cosine alpha must lie in [0, 1/2]");
        return {MethodKind::RaisedCosine, alpha};
    }
    throw ConstraintError("unknown beamforming method '" + std::string(name) + "'");
}

double Beampattern::peak_magnitude() const {
    double best = 0.0;
    for (const auto& r : response)
        best = std::max(best, std::abs(r));
    return best;
}

double Beampattern::absolute_level_db(std::size_t i) const {
    return to_db(std::abs(response.at(i)), 1.0);
}

cplx steered_response(const ComplexVector& snapshot, const ArrayGeometry& geometry,
                      double azimuthDeg) {
    check_snapshot(snapshot, geometry);
    if (!(azimuthDeg >= 0.0 && azimuthDeg <= 180.0))
        throw ConstraintError("azimuth outside [0, 180] degrees");
    cplx acc{};
    for (std::size_t m = 0; m < snapshot.size(); ++m)
        acc += snapshot[m] * std::polar(1.0, steering_phase(geometry, azimuthDeg, m));
    return acc;
}

Beampattern conventional_beampattern(const ComplexVector& snapshot, const ArrayGeometry& geometry,
                                     const AngleGrid& angles, std::size_t dftSize) {
    return shaded_beampattern(snapshot, geometry, angles, 0.0, dftSize);
}

Beampattern shaded_beampattern(const ComplexVector& snapshot, const ArrayGeometry& geometry,
                               const AngleGrid& angles, double alpha, std::size_t dftSize) {
    check_snapshot(snapshot, geometry);
    const RaisedCosineWindow window(alpha, geometry.sensorCount);
    const auto spectrum = dft(apply_window_time(snapshot, window), dftSize);
    Method method{MethodKind::RaisedCosine, alpha};
    if (alpha == 0.0)
        method = {MethodKind::Rect, 0.0};
    else if (alpha == 0.5)
        method = {MethodKind::Hanning, 0.5};
    return sample_spectrum(spectrum, geometry, angles, nullptr, method);
}

Beampattern sva_beampattern(const ComplexVector& snapshot, const ArrayGeometry& geometry,
                            const AngleGrid& angles, const SvaOptions& opts) {
    check_snapshot(snapshot, geometry);
    const std::size_t K = padding_factor(opts.dftSize, geometry.sensorCount);
    if (opts.paddingFactor != 0 && opts.paddingFactor != K)
        throw ConstraintError("padding factor " + std::to_string(opts.paddingFactor) +
                              " differs from N / M = " + std::to_string(K));
    SvaOptions effective = opts;
    effective.paddingFactor = K;

    const auto spectrum = dft(snapshot, opts.dftSize);
    const auto result = apply_sva(spectrum, effective);
    const Method method{opts.mode == SvaMode::Jointly ? MethodKind::SvaJointly
                                                      : MethodKind::SvaSeparately,
                        0.0};
    return sample_spectrum(result.output, geometry, angles, &result.alphas, method);
}

Beampattern form_beampattern(const ComplexVector& snapshot, const ArrayGeometry& geometry,
                             const AngleGrid& angles, const Method& method, std::size_t dftSize,
                             double denomEpsilon) {
    switch (method.kind) {
    case MethodKind::Rect:
        return conventional_beampattern(snapshot, geometry, angles, dftSize);
    case MethodKind::Hanning:
        return shaded_beampattern(snapshot, geometry, angles, 0.5, dftSize);
    case MethodKind::RaisedCosine: {
        auto p = shaded_beampattern(snapshot, geometry, angles, method.alpha, dftSize);
        p.method = method;
        return p;
    }
    case MethodKind::SvaJointly:
    case MethodKind::SvaSeparately: {
        SvaOptions opts;
        opts.mode =
            method.kind == MethodKind::SvaJointly ? SvaMode::Jointly : SvaMode::Separately;
        opts.dftSize = dftSize;
        opts.denomEpsilon = denomEpsilon;
        return sva_beampattern(snapshot, geometry, angles, opts);
    }
    }
    throw ConstraintError("unknown beamforming method");
}

} // namespace svabf
