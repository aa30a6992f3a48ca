// SPDX-License-Identifier: Apache-2.0
#include "svabf/metrics.hpp"

#include "svabf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace svabf {

namespace {

constexpr double kDetectMarginDb = 3.0;
constexpr double kFloorBandFactor = 4.0;

struct Segment {
    std::size_t first;
    std::size_t last;
    double level;
};

std::vector<Segment> segments(const std::vector<double>& levels) {
    std::vector<Segment> out;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!out.empty() && levels[i] == out.back().level)
            out.back().last = i;
        else
            out.push_back({i, i, levels[i]});
    }
    return out;
}

bool is_local_max(const std::vector<Segment>& segs, std::size_t s) {
    if (s == 0 || s + 1 >= segs.size())
        return false;
    return segs[s - 1].level < segs[s].level && segs[s + 1].level < segs[s].level;
}

double centre_angle(const Beampattern& p, const Segment& seg) {
    return 0.5 * (p.anglesDeg[seg.first] + p.anglesDeg[seg.last]);
}

double prominence(const std::vector<Segment>& segs, std::size_t s) {
    const double level = segs[s].level;
    double leftMin = level;
    for (std::size_t i = s; i-- > 0;) {
        if (segs[i].level > level)
            break;
        leftMin = std::min(leftMin, segs[i].level);
    }
    double rightMin = level;
    for (std::size_t i = s + 1; i < segs.size(); ++i) {
        if (segs[i].level > level)
            break;
        rightMin = std::min(rightMin, segs[i].level);
    }
    return level - std::max(leftMin, rightMin);
}

std::size_t nearest_index(const Beampattern& p, double angleDeg) {
    if (p.anglesDeg.empty())
        throw ConstraintError("empty beampattern");
    const auto it = std::lower_bound(p.anglesDeg.begin(), p.anglesDeg.end(), angleDeg);
    if (it == p.anglesDeg.begin())
        return 0;
    if (it == p.anglesDeg.end())
        return p.anglesDeg.size() - 1;
    const auto hi = static_cast<std::size_t>(it - p.anglesDeg.begin());
    return (angleDeg - p.anglesDeg[hi - 1] <= *it - angleDeg) ? hi - 1 : hi;
}

// Index of the segment containing grid point i.
std::size_t segment_of(const std::vector<Segment>& segs, std::size_t i) {
    const auto it = std::upper_bound(segs.begin(), segs.end(), i,
                                     [](std::size_t v, const Segment& s) { return v < s.first; });
    return static_cast<std::size_t>(it - segs.begin()) - 1;
}

// Hill-climbs over segments to the nearest local maximum (or grid end).
std::size_t climb(const std::vector<Segment>& segs, std::size_t s) {
    while (true) {
        const bool upLeft = s > 0 && segs[s - 1].level > segs[s].level;
        const bool upRight = s + 1 < segs.size() && segs[s + 1].level > segs[s].level;
        if (upLeft && upRight)
            s = segs[s - 1].level >= segs[s + 1].level ? s - 1 : s + 1;
        else if (upLeft)
            --s;
        else if (upRight)
            ++s;
        else
            return s;
    }
}

// Highest local maximum whose centre lies within window of angle.
std::optional<std::size_t> best_peak_near(const Beampattern& p, const std::vector<Segment>& segs,
                                          double angleDeg, double windowDeg) {
    std::optional<std::size_t> best;
    for (std::size_t s = 0; s < segs.size(); ++s) {
        if (!is_local_max(segs, s))
            continue;
        if (std::abs(centre_angle(p, segs[s]) - angleDeg) > windowDeg)
            continue;
        if (!best || segs[s].level > segs[*best].level)
            best = s;
    }
    return best;
}

} // namespace

std::vector<Peak> find_peaks(const Beampattern& pattern, double minProminenceDb) {
    const auto segs = segments(pattern.powerDb);
    std::vector<Peak> peaks;
    for (std::size_t s = 0; s < segs.size(); ++s) {
        if (!is_local_max(segs, s))
            continue;
        const double prom = prominence(segs, s);
        if (prom >= minProminenceDb)
            peaks.push_back({centre_angle(pattern, segs[s]), segs[s].level, prom});
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const Peak& a, const Peak& b) { return a.levelDb > b.levelDb; });
    return peaks;
}

double mainlobe_width(const Beampattern& pattern, double peakAngleDeg) {
    const auto& lv = pattern.powerDb;
    const auto segs = segments(lv);
    const auto peak = segs[climb(segs, segment_of(segs, nearest_index(pattern, peakAngleDeg)))];
    const double target = peak.level - 3.0;
    const auto& ang = pattern.anglesDeg;

    std::size_t l = peak.first;
    while (l > 0 && lv[l - 1] > target)
        --l;
    if (l == 0)
        throw ConstraintError("left -3 dB crossing not found inside the angle grid");
    // Crossing between l - 1 (<= target) and l (> target).
    const double left =
        ang[l - 1] + (target - lv[l - 1]) / (lv[l] - lv[l - 1]) * (ang[l] - ang[l - 1]);

    std::size_t r = peak.last;
    while (r + 1 < lv.size() && lv[r + 1] > target)
        ++r;
    if (r + 1 >= lv.size())
        throw ConstraintError("right -3 dB crossing not found inside the angle grid");
    const double right = ang[r] + (lv[r] - target) / (lv[r] - lv[r + 1]) * (ang[r + 1] - ang[r]);
    return right - left;
}

std::pair<std::size_t, std::size_t> mainlobe_span(const Beampattern& pattern, double angleDeg) {
    const auto& lv = pattern.powerDb;
    const auto segs = segments(lv);
    const auto top = segs[climb(segs, segment_of(segs, nearest_index(pattern, angleDeg)))];
    std::size_t l = top.first;
    while (l > 0 && lv[l - 1] <= lv[l])
        --l;
    std::size_t r = top.last;
    while (r + 1 < lv.size() && lv[r + 1] <= lv[r])
        ++r;
    return {l, r};
}

std::vector<bool> outside_mainlobes(const Beampattern& pattern,
                                    std::span<const double> sourceAnglesDeg) {
    std::vector<bool> outside(pattern.size(), true);
    for (const double a : sourceAnglesDeg) {
        const auto [l, r] = mainlobe_span(pattern, a);
        for (std::size_t i = l; i <= r; ++i)
            outside[i] = false;
    }
    return outside;
}

double median_db(std::vector<double> levels) {
    if (levels.empty())
        throw ConstraintError("median of an empty set");
    const auto mid = levels.begin() + static_cast<std::ptrdiff_t>(levels.size() / 2);
    std::nth_element(levels.begin(), mid, levels.end());
    if (levels.size() % 2 == 1)
        return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(levels.begin(), mid);
    return 0.5 * (lower + upper);
}

bool resolvability(const Beampattern& pattern, double angleADeg, double angleBDeg,
                   double minDipDb) {
    if (angleADeg == angleBDeg)
        throw ConstraintError("resolvability needs two distinct angles");
    const auto segs = segments(pattern.powerDb);
    const double window = 0.5 * std::abs(angleADeg - angleBDeg);
    const auto a = best_peak_near(pattern, segs, angleADeg, window);
    const auto b = best_peak_near(pattern, segs, angleBDeg, window);
    if (!a || !b || *a == *b)
        return false;
    const auto lo = std::min(*a, *b);
    const auto hi = std::max(*a, *b);
    double dip = segs[lo].level;
    for (std::size_t s = lo; s <= hi; ++s)
        dip = std::min(dip, segs[s].level);
    const double lower = std::min(segs[lo].level, segs[hi].level);
    return lower - dip >= minDipDb;
}

bool detects_target(const Beampattern& pattern, double angleDeg, double maxLevelDb,
                    double windowDeg) {
    if (pattern.anglesDeg.empty())
        return false;
    if (angleDeg < pattern.anglesDeg.front() || angleDeg > pattern.anglesDeg.back())
        throw ConstraintError("target angle outside the pattern's grid");
    const auto segs = segments(pattern.powerDb);
    const auto candidate = best_peak_near(pattern, segs, angleDeg, windowDeg);
    if (!candidate)
        return false;

    const double outer = kFloorBandFactor * windowDeg;
    std::optional<double> floor;
    for (std::size_t s = 0; s < segs.size(); ++s) {
        if (!is_local_max(segs, s))
            continue;
        const double d = std::abs(centre_angle(pattern, segs[s]) - angleDeg);
        if (d <= windowDeg || d > outer || segs[s].level > maxLevelDb)
            continue;
        floor = std::max(floor.value_or(kFloorDb), segs[s].level);
    }
    if (!floor) {
        std::vector<double> band;
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            const double d = std::abs(pattern.anglesDeg[i] - angleDeg);
            if (d > windowDeg && d <= outer)
                band.push_back(pattern.powerDb[i]);
        }
        floor = band.empty() ? kFloorDb : median_db(std::move(band));
    }
    return segs[*candidate].level - *floor >= kDetectMarginDb;
}

PatternMetrics analyze_pattern(const Beampattern& pattern, std::span<const double> sourceAnglesDeg,
                               double minProminenceDb) {
    PatternMetrics m;
    m.peaks = find_peaks(pattern, minProminenceDb);
    if (m.peaks.empty())
        throw ConstraintError("pattern has no peak to measure");
    m.mainlobeWidthDeg = mainlobe_width(pattern, m.peaks.front().angleDeg);

    std::vector<double> declared(sourceAnglesDeg.begin(), sourceAnglesDeg.end());
    if (declared.empty())
        declared.push_back(m.peaks.front().angleDeg);
    const auto outside = outside_mainlobes(pattern, declared);
    std::vector<double> rest;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (outside[i])
            rest.push_back(pattern.powerDb[i]);
    }
    if (!rest.empty()) {
        m.peakSidelobeDb = *std::max_element(rest.begin(), rest.end());
        m.noiseFloorDb = median_db(std::move(rest));
    }
    return m;
}

} // namespace svabf
