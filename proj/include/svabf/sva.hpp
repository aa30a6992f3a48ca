// SPDX-License-Identifier: Apache-2.0
//
// Spatially variant apodization on a complex spectrum.
//
// For each bin the raised-cosine parameter alpha in [0, 1/2] that minimises
// |X[k] - alpha S[k]|, S[k] = X[k-K] + X[k+K], is picked in closed form:
//
//   alpha0 = Re{ X[k] / S[k] }
//   alpha0 < 0          -> Y = X[k]
//   0 <= alpha0 <= 1/2  -> Y = X[k] - alpha0 S[k]
//   alpha0 > 1/2        -> Y = X[k] - S[k] / 2
//
// The I-Q separately variant applies the same rule to the real and the
// imaginary parts independently; its middle case returns 0.
#pragma once

#include "svabf/spectral.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace svabf {

enum class SvaMode { Jointly, Separately };

std::string_view to_string(SvaMode mode);

struct SvaOptions {
    SvaMode mode = SvaMode::Jointly;
    /// Expected N; 0 accepts whatever length the spectrum has.
    std::size_t dftSize = 0;
    /// Bin distance K of the raised-cosine impulses; N / M for zero-padded
    /// data. Must be set for spectrum-level calls; the beamformer derives it
    /// from the sensor count when left at 0.
    std::size_t paddingFactor = 0;
    /// |S[k]| below denomEpsilon * mean|X| is treated as a zero denominator.
    double denomEpsilon = 1e-12;

    void validate() const;
};

struct SvaResult {
    ComplexSpectrum output;
    /// Clamped alpha per bin: 0 for pass-through bins, 1/2 for clamped bins.
    /// In Separately mode this is the in-phase record.
    std::vector<double> alphas;
    /// Quadrature record; empty in Jointly mode.
    std::vector<double> quadratureAlphas;
    SvaMode mode;
};

/// Returned by sva_alpha when the denominator vanishes. Negative, so callers
/// take the pass-through branch.
inline constexpr double kDegenerateAlpha = -std::numeric_limits<double>::infinity();

/// Unclamped alpha0[k] = Re{ X[k] / (X[k-K] + X[k+K]) }.
double sva_alpha(const ComplexSpectrum& X, std::int64_t k, std::size_t K, double eps);

SvaResult sva_jointly(const ComplexSpectrum& X, const SvaOptions& opts);
SvaResult sva_separately(const ComplexSpectrum& X, const SvaOptions& opts);

/// Dispatches on opts.mode.
SvaResult apply_sva(const ComplexSpectrum& X, const SvaOptions& opts);

/// Multi-apodization by exhaustive search: windows the data with every alpha
/// of the grid and keeps, per bin, the value of least magnitude.
ComplexSpectrum multi_apodization_oracle(const ComplexVector& x, std::span<const double> alphaGrid,
                                         std::size_t n);

} // namespace svabf
