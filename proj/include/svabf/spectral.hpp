// SPDX-License-Identifier: Apache-2.0
//
// Complex vectors, the unnormalized N-point DFT and the raised-cosine
// window family w(n) = 1 - 2 alpha cos(2 pi n / N), 0 <= alpha <= 1/2.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace svabf {

using cplx = std::complex<double>;

/// Finite, non-empty sequence of complex samples (sensor outputs, time data).
class ComplexVector {
public:
    explicit ComplexVector(std::vector<cplx> samples);
    ComplexVector(std::initializer_list<cplx> samples);

    std::size_t size() const noexcept { return samples_.size(); }
    const cplx& operator[](std::size_t i) const { return samples_[i]; }
    std::span<const cplx> samples() const noexcept { return samples_; }

    friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

private:
    std::vector<cplx> samples_;
};

/// N complex DFT bins. Bin access through `at()` is circular modulo N and
/// accepts signed indices, so X[k - K] and X[k + K] never fall off the ends.
class ComplexSpectrum {
public:
    explicit ComplexSpectrum(std::vector<cplx> bins);

    std::size_t dft_size() const noexcept { return bins_.size(); }
    const cplx& operator[](std::size_t k) const { return bins_[k]; }
    const cplx& at(std::int64_t k) const { return bins_[wrap(k)]; }
    std::span<const cplx> bins() const noexcept { return bins_; }

    /// Mean of |X[k]| over all bins.
    double mean_magnitude() const;
    double max_magnitude() const;

    std::size_t wrap(std::int64_t k) const noexcept {
        const auto n = static_cast<std::int64_t>(bins_.size());
        return static_cast<std::size_t>(((k % n) + n) % n);
    }

    friend bool operator==(const ComplexSpectrum&, const ComplexSpectrum&) = default;

private:
    std::vector<cplx> bins_;
};

/// Raised-cosine window of a fixed length and alpha.
class RaisedCosineWindow {
public:
    RaisedCosineWindow(double alpha, std::size_t length);

    double alpha() const noexcept { return alpha_; }
    std::size_t size() const noexcept { return weights_.size(); }
    std::span<const double> weights() const noexcept { return weights_; }

    static RaisedCosineWindow rectangular(std::size_t length) { return {0.0, length}; }
    static RaisedCosineWindow hanning(std::size_t length) { return {0.5, length}; }

private:
    double alpha_;
    std::vector<double> weights_;
};

/// w(i) = 1 - 2 alpha cos(2 pi i / n), i = 0..n-1. Throws ConstraintError
/// when alpha is outside [0, 1/2].
std::vector<double> raised_cosine_weights(double alpha, std::size_t n);

/// X[k] = sum_m x[m] exp(-j 2 pi k m / n), x zero-padded to n points.
/// Throws SizeError when n < x.size().
ComplexSpectrum dft(const ComplexVector& x, std::size_t n);

/// Inverse of `dft` (carries the 1/N factor). Returns all N samples.
ComplexVector idft(const ComplexSpectrum& spectrum);

/// Elementwise x[i] * w[i]. Throws SizeError on length mismatch.
ComplexVector apply_window_time(const ComplexVector& x, const RaisedCosineWindow& w);

/// Three-tap frequency-domain windowing at one bin:
/// -alpha X[k-K] + X[k] - alpha X[k+K], neighbours taken circularly.
cplx apply_window_freq(const ComplexSpectrum& spectrum, std::int64_t k, std::size_t shift,
                       double alpha);

/// The same three-tap form evaluated at every bin.
ComplexSpectrum apply_window_freq(const ComplexSpectrum& spectrum, std::size_t shift,
                                  double alpha);

/// K = N / M. Throws ConstraintError unless N is a positive multiple of M.
std::size_t padding_factor(std::size_t dftSize, std::size_t length);

} // namespace svabf
