// SPDX-License-Identifier: Apache-2.0
#include "svabf/spectral.hpp"

#include "svabf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace svabf {

namespace {

void require_finite(std::span<const cplx> values, const char* what) {
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ConstraintError(std::string(what) + " contains a non-finite value");
    }
}

// exp(-j 2 pi i / n) for i = 0..n-1; callers index it with (k * m) mod n so
// the phase argument never grows with k * m.
std::vector<cplx> twiddles(std::size_t n) {
    std::vector<cplx> table(n);
    for (std::size_t i = 0; i < n; ++i)
        table[i] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(i) /
                                       static_cast<double>(n));
    return table;
}

} // namespace

ComplexVector::ComplexVector(std::vector<cplx> samples) : samples_(std::move(samples)) {
    if (samples_.empty())
        throw SizeError("ComplexVector must hold at least one sample");
    require_finite(samples_, "ComplexVector");
}

ComplexVector::ComplexVector(std::initializer_list<cplx> samples)
    : ComplexVector(std::vector<cplx>(samples)) {}

ComplexSpectrum::ComplexSpectrum(std::vector<cplx> bins) : bins_(std::move(bins)) {
    if (bins_.empty())
        throw SizeError("ComplexSpectrum must hold at least one bin");
    require_finite(bins_, "ComplexSpectrum");
}

double ComplexSpectrum::mean_magnitude() const {
    double sum = 0.0;
    for (const auto& b : bins_)
        sum += std::abs(b);
    return sum / static_cast<double>(bins_.size());
}

double ComplexSpectrum::max_magnitude() const {
    double best = 0.0;
    for (const auto& b : bins_)
        best = std::max(best, std::abs(b));
    return best;
}

std::vector<double> raised_cosine_weights(double alpha, std::size_t n) {
    if (!(alpha >= 0.0 && alpha <= 0.5))
        throw ConstraintError("raised-cosine alpha must lie in [0, 1/2], got " +
                              std::to_string(alpha));
    if (n == 0)
        throw SizeError("window length must be positive");

    std::vector<double> w(n, 1.0);
    if (alpha == 0.0)
        return w;
    for (std::size_t i = 0; i < n; ++i) {
        // Quarter-period points are set exactly so alpha = 1/2 gives w(0) = 0.
        const std::size_t q = 4 * i;
        double c;
        if (q == 0)
            c = 1.0;
        else if (q == n)
            c = 0.0;
        else if (q == 2 * n)
            c = -1.0;
        else if (q == 3 * n)
            c = 0.0;
        else
            c = std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
        w[i] = 1.0 - 2.0 * alpha * c;
    }
    return w;
}

RaisedCosineWindow::RaisedCosineWindow(double alpha, std::size_t length)
    : alpha_(alpha), weights_(raised_cosine_weights(alpha, length)) {}

ComplexSpectrum dft(const ComplexVector& x, std::size_t n) {
    if (n < x.size())
        throw SizeError("DFT size " + std::to_string(n) + " is smaller than input length " +
                        std::to_string(x.size()));

    const auto tw = twiddles(n);
    std::vector<cplx> bins(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{};
        std::size_t idx = 0;
        for (std::size_t m = 0; m < x.size(); ++m) {
            acc += x[m] * tw[idx];
            idx += k;
            if (idx >= n)
                idx %= n;
        }
        bins[k] = acc;
    }
    return ComplexSpectrum(std::move(bins));
}

ComplexVector idft(const ComplexSpectrum& spectrum) {
    const std::size_t n = spectrum.dft_size();
    const auto tw = twiddles(n);
    std::vector<cplx> out(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) {
        cplx acc{};
        std::size_t idx = 0;
        for (std::size_t k = 0; k < n; ++k) {
            acc += spectrum[k] * std::conj(tw[idx]);
            idx += m;
            if (idx >= n)
                idx %= n;
        }
        out[m] = acc * scale;
    }
    return ComplexVector(std::move(out));
}

ComplexVector apply_window_time(const ComplexVector& x, const RaisedCosineWindow& w) {
    if (x.size() != w.size())
        throw SizeError("window length " + std::to_string(w.size()) +
                        " does not match data length " + std::to_string(x.size()));
    std::vector<cplx> out(x.size());
    const auto weights = w.weights();
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = x[i] * weights[i];
    return ComplexVector(std::move(out));
}

cplx apply_window_freq(const ComplexSpectrum& spectrum, std::int64_t k, std::size_t shift,
                       double alpha) {
    const auto K = static_cast<std::int64_t>(shift);
    return -alpha * spectrum.at(k - K) + spectrum.at(k) - alpha * spectrum.at(k + K);
}

ComplexSpectrum apply_window_freq(const ComplexSpectrum& spectrum, std::size_t shift,
                                  double alpha) {
    std::vector<cplx> out(spectrum.dft_size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = apply_window_freq(spectrum, static_cast<std::int64_t>(k), shift, alpha);
    return ComplexSpectrum(std::move(out));
}

std::size_t padding_factor(std::size_t dftSize, std::size_t length) {
    if (length == 0 || dftSize == 0 || dftSize % length != 0)
        throw ConstraintError("DFT size " + std::to_string(dftSize) +
                              " must be an integer multiple of the sensor count " +
                              std::to_string(length));
    return dftSize / length;
}

} // namespace svabf
