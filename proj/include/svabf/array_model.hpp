// SPDX-License-Identifier: Apache-2.0
//
// Uniform linear array along the x-axis, first sensor as phase reference.
// Sensor outputs are the complex amplitudes of the narrowband plane waves at
// the carrier, so a scenario reduces to one snapshot of M complex values.
#pragma once

#include "svabf/spectral.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace svabf {

struct ArrayGeometry {
    std::size_t sensorCount = 64;
    /// d / lambda0.
    double spacingRatio = 0.5;

    void validate() const;
    /// True when d / lambda0 > 1/2 and grating lobes enter the visible region.
    bool grating_lobes() const noexcept { return spacingRatio > 0.5; }

    friend bool operator==(const ArrayGeometry&, const ArrayGeometry&) = default;
};

struct SourceSpec {
    /// Azimuth from the positive x-axis (array axis): 0 and 180 are endfire,
    /// 90 is broadside.
    double azimuthDeg = 90.0;
    /// Relative to the 0 dB reference source.
    double powerDb = 0.0;
    double phaseRad = 0.0;

    double amplitude() const;

    friend bool operator==(const SourceSpec&, const SourceSpec&) = default;
};

struct Scenario {
    ArrayGeometry geometry;
    std::vector<SourceSpec> sources;
    /// Per-sensor SNR of the strongest source; +inf disables noise.
    double snrDb = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    /// Draw each source's initial phase uniformly from the seed instead of
    /// using SourceSpec::phaseRad.
    bool randomPhase = false;

    void validate() const;
    /// Noise variance per sensor (sum of I and Q), 0 when noiseless.
    double noise_variance() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// cos() of an azimuth in degrees, exact at 0, 90 and 180.
double cos_degrees(double deg);

/// Phase applied by the beamformer to sensor m when steering to azimuth phi:
/// -2 pi d1 m cos(phi). A plane wave from phi carries the opposite phase, so
/// the beamformer sum is coherent at the true azimuth.
double steering_phase(const ArrayGeometry& geometry, double azimuthDeg, std::size_t m);

/// Noiseless part of the snapshot.
ComplexVector clean_snapshot(const Scenario& scenario);

/// Circularly-symmetric complex Gaussian noise for the scenario's seed and
/// SNR. All zeros for infinite SNR.
ComplexVector noise_snapshot(const Scenario& scenario);

/// clean_snapshot + noise_snapshot. Bit-reproducible for a fixed scenario.
ComplexVector synthesize_snapshot(const Scenario& scenario);

} // namespace svabf
