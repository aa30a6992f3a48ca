// SPDX-License-Identifier: Apache-2.0
//
// DFT-domain beamforming for a uniform linear array.
//
// The beamformer output at azimuth phi equals the spatial DTFT of the sensor
// outputs at omega = 2 pi d1 cos(phi). Patterns are formed by taking an N-point
// DFT of the snapshot, optionally processing it in bin space (SVA), and then
// reading bin round(N d1 cos(phi)) for each grid angle.
#pragma once

#include "svabf/array_model.hpp"
#include "svabf/spectral.hpp"
#include "svabf/sva.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace svabf {

/// Level assigned to exact zeros when converting to dB.
inline constexpr double kFloorDb = -300.0;

/// Strictly increasing azimuths in degrees, all within [0, 180].
class AngleGrid {
public:
    explicit AngleGrid(std::vector<double> degrees);

    /// lo, lo + step, ... up to hi (inclusive when hi is on the lattice).
    static AngleGrid uniform(double stepDeg, double loDeg = 0.0, double hiDeg = 180.0);

    std::size_t size() const noexcept { return degrees_.size(); }
    double operator[](std::size_t i) const { return degrees_[i]; }
    const std::vector<double>& degrees() const noexcept { return degrees_; }

private:
    std::vector<double> degrees_;
};

/// Signed-bin <-> azimuth mapping, k = round(N d1 cos(phi)).
class BinAngleMap {
public:
    BinAngleMap(std::size_t dftSize, double spacingRatio);

    std::size_t dft_size() const noexcept { return dftSize_; }
    double spacing_ratio() const noexcept { return spacingRatio_; }
    /// Largest |k| that corresponds to a physical angle: floor(d1 N).
    std::int64_t max_visible_bin() const noexcept;

    /// Rounds half away from zero. Throws ConstraintError outside [0, 180].
    std::int64_t angle_to_bin(double azimuthDeg) const;
    /// arccos(k / (d1 N)) in degrees. Throws ConstraintError for |k| > d1 N.
    double bin_to_angle(std::int64_t k) const;

private:
    std::size_t dftSize_;
    double spacingRatio_;
};

enum class MethodKind { Rect, Hanning, RaisedCosine, SvaJointly, SvaSeparately };

struct Method {
    MethodKind kind = MethodKind::Rect;
    /// Only used by RaisedCosine.
    double alpha = 0.0;

    bool is_sva() const noexcept {
        return kind == MethodKind::SvaJointly || kind == MethodKind::SvaSeparately;
    }

    /// rect, hanning, raised-cosine:<alpha>, sva-joint, sva-separate.
    std::string name() const;
    static Method parse(std::string_view name);

    friend bool operator==(const Method&, const Method&) = default;
};

struct Beampattern {
    std::vector<double> anglesDeg;
    std::vector<cplx> response;
    /// 20 log10(|response| / max|response|); exact zeros map to kFloorDb.
    std::vector<double> powerDb;
    /// Clamped SVA alpha per angle; empty for linear methods.
    std::vector<double> alphaTrace;
    Method method;

    std::size_t size() const noexcept { return anglesDeg.size(); }
    double peak_magnitude() const;
    /// 20 log10 |response[i]| without normalisation.
    double absolute_level_db(std::size_t i) const;
};

/// Direct delay-and-sum output at one azimuth:
/// sum_m x_m exp(-j 2 pi m d1 cos(phi)).
cplx steered_response(const ComplexVector& snapshot, const ArrayGeometry& geometry,
                      double azimuthDeg);

/// N-point DFT of the (unshaded) snapshot sampled through the bin map.
Beampattern conventional_beampattern(const ComplexVector& snapshot, const ArrayGeometry& geometry,
                                     const AngleGrid& angles, std::size_t dftSize);

/// Conventional pattern of the raised-cosine shaded snapshot.
Beampattern shaded_beampattern(const ComplexVector& snapshot, const ArrayGeometry& geometry,
                               const AngleGrid& angles, double alpha, std::size_t dftSize);

/// SVA on the full N-bin spatial spectrum, then mapped to angles. N must be
/// a multiple of M; K = N / M.
Beampattern sva_beampattern(const ComplexVector& snapshot, const ArrayGeometry& geometry,
                            const AngleGrid& angles, const SvaOptions& opts);

/// Dispatch on `method`.
Beampattern form_beampattern(const ComplexVector& snapshot, const ArrayGeometry& geometry,
                             const AngleGrid& angles, const Method& method, std::size_t dftSize,
                             double denomEpsilon = 1e-12);

} // namespace svabf
