// SPDX-License-Identifier: Apache-2.0
//
// Beampattern measurements: peaks, -3 dB mainlobe width, sidelobe and noise
// floor statistics, two-source resolvability and weak-target detection.
//
// Patterns formed from a zero-padded DFT are piecewise constant in angle (each
// grid angle reads the nearest bin), so runs of equal level are treated as one
// plateau and located at the plateau centre.
#pragma once

#include "svabf/beamformer.hpp"

#include <span>
#include <utility>
#include <vector>

namespace svabf {

struct Peak {
    double angleDeg;
    double levelDb;
    double prominenceDb;
};

struct PatternMetrics {
    /// Sorted by level, highest first.
    std::vector<Peak> peaks;
    /// -3 dB width of the highest peak.
    double mainlobeWidthDeg = 0.0;
    /// Highest level outside the mainlobes of the declared sources.
    double peakSidelobeDb = kFloorDb;
    /// Median level outside the mainlobes.
    double noiseFloorDb = kFloorDb;
};

/// Local maxima with prominence >= minProminenceDb, highest first. Plateaus
/// touching either end of the grid are not reported.
std::vector<Peak> find_peaks(const Beampattern& pattern, double minProminenceDb);

/// Width between the -3 dB crossings (relative to the peak's own level) around
/// the local maximum nearest peakAngleDeg, linearly interpolated. Throws
/// ConstraintError when a crossing is missing inside the grid.
double mainlobe_width(const Beampattern& pattern, double peakAngleDeg);

/// Inclusive index span between the level minima flanking the local maximum
/// reached by climbing from the grid point nearest angleDeg.
std::pair<std::size_t, std::size_t> mainlobe_span(const Beampattern& pattern, double angleDeg);

/// true for grid points outside every declared source's mainlobe span.
std::vector<bool> outside_mainlobes(const Beampattern& pattern,
                                    std::span<const double> sourceAnglesDeg);

/// Median of the given levels. Throws ConstraintError when empty.
double median_db(std::vector<double> levels);

/// Peaks near both angles and a dip of at least minDipDb below the lower one.
bool resolvability(const Beampattern& pattern, double angleADeg, double angleBDeg,
                   double minDipDb = 3.0);

/// A local peak within windowDeg of angleDeg stands at least 3 dB above the
/// surrounding floor. The floor is the highest local peak in the band
/// windowDeg < |phi - angle| <= 4 windowDeg, ignoring peaks louder than
/// maxLevelDb (other sources); with no such peak, the band's median level.
bool detects_target(const Beampattern& pattern, double angleDeg, double maxLevelDb,
                    double windowDeg);

PatternMetrics analyze_pattern(const Beampattern& pattern, std::span<const double> sourceAnglesDeg,
                               double minProminenceDb = 3.0);

} // namespace svabf
