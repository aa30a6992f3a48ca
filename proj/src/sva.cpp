// SPDX-License-Identifier: Apache-2.0
#include "svabf/sva.hpp"

#include "svabf/errors.hpp"

#include <cmath>
#include <string>

namespace svabf {

namespace {

struct ComponentResult {
    double value;
    double alpha;
};

// One-dimensional rule used by the separately mode on each of I and Q.
ComponentResult sva_component(double x, double s, double threshold) {
    const double mag = std::abs(s);
    if (mag == 0.0 || mag < threshold)
        return {x, 0.0};
    const double a = x / s;
    if (a < 0.0)
        return {x, 0.0};
    if (a <= 0.5)
        return {0.0, a};
    const double y = x - 0.5 * s;
    if (std::abs(y) > std::abs(x))
        return {x, 0.0};
    return {y, 0.5};
}

void check_spectrum(const ComplexSpectrum& X, const SvaOptions& opts) {
    opts.validate();
    if (opts.dftSize != 0 && opts.dftSize != X.dft_size())
        throw SizeError("spectrum has " + std::to_string(X.dft_size()) + " bins, options expect " +
                        std::to_string(opts.dftSize));
}

} // namespace

std::string_view to_string(SvaMode mode) {
    return mode == SvaMode::Jointly ? "jointly" : "separately";
}

void SvaOptions::validate() const {
    if (paddingFactor == 0)
        throw ConstraintError("SVA padding factor must be positive");
    if (!(denomEpsilon > 0.0))
        throw ConstraintError("SVA denominator epsilon must be positive");
}

double sva_alpha(const ComplexSpectrum& X, std::int64_t k, std::size_t K, double eps) {
    const auto shift = static_cast<std::int64_t>(K);
    const cplx s = X.at(k - shift) + X.at(k + shift);
    const double mag = std::abs(s);
    if (mag == 0.0 || mag < eps * X.mean_magnitude())
        return kDegenerateAlpha;
    return (X.at(k) / s).real();
}

SvaResult sva_jointly(const ComplexSpectrum& X, const SvaOptions& opts) {
    check_spectrum(X, opts);
    const std::size_t n = X.dft_size();
    const auto K = static_cast<std::int64_t>(opts.paddingFactor);
    const double threshold = opts.denomEpsilon * X.mean_magnitude();

    std::vector<cplx> out(n);
    std::vector<double> alphas(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::int64_t>(i);
        const cplx x = X[i];
        const cplx s = X.at(k - K) + X.at(k + K);
        const double mag = std::abs(s);
        out[i] = x;
        if (mag == 0.0 || mag < threshold)
            continue;

        const double a = (x / s).real();
        if (a < 0.0)
            continue;
        const double clamped = a > 0.5 ? 0.5 : a;
        const cplx y = x - clamped * s;
        // alpha = 0 is always feasible; guard against rounding making the
        // minimiser one ulp worse than the pass-through.
        if (std::abs(y) <= std::abs(x)) {
            out[i] = y;
            alphas[i] = clamped;
        }
    }
    return {ComplexSpectrum(std::move(out)), std::move(alphas), {}, SvaMode::Jointly};
}

SvaResult sva_separately(const ComplexSpectrum& X, const SvaOptions& opts) {
    check_spectrum(X, opts);
    const std::size_t n = X.dft_size();
    const auto K = static_cast<std::int64_t>(opts.paddingFactor);
    const double threshold = opts.denomEpsilon * X.mean_magnitude();

    std::vector<cplx> out(n);
    std::vector<double> inPhase(n), quadrature(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::int64_t>(i);
        const cplx x = X[i];
        const cplx s = X.at(k - K) + X.at(k + K);
        const auto re = sva_component(x.real(), s.real(), threshold);
        const auto im = sva_component(x.imag(), s.imag(), threshold);
        out[i] = {re.value, im.value};
        inPhase[i] = re.alpha;
        quadrature[i] = im.alpha;
    }
    return {ComplexSpectrum(std::move(out)), std::move(inPhase), std::move(quadrature),
            SvaMode::Separately};
}

SvaResult apply_sva(const ComplexSpectrum& X, const SvaOptions& opts) {
    return opts.mode == SvaMode::Jointly ? sva_jointly(X, opts) : sva_separately(X, opts);
}

ComplexSpectrum multi_apodization_oracle(const ComplexVector& x, std::span<const double> alphaGrid,
                                         std::size_t n) {
    if (alphaGrid.empty())
        throw ConstraintError("multi-apodization needs at least one window");

    std::vector<cplx> best;
    for (const double alpha : alphaGrid) {
        const RaisedCosineWindow w(alpha, x.size());
        const auto spectrum = dft(apply_window_time(x, w), n);
        if (best.empty()) {
            best.assign(spectrum.bins().begin(), spectrum.bins().end());
            continue;
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (std::abs(spectrum[k]) < std::abs(best[k]))
                best[k] = spectrum[k];
        }
    }
    return ComplexSpectrum(std::move(best));
}

} // namespace svabf
