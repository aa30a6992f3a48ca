// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include "svabf/errors.hpp"
#include "svabf/spectral.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace svabf;

namespace {

double max_rel_error(std::span<const cplx> a, std::span<const cplx> b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - b[i]));
        den = std::max(den, std::abs(b[i]));
    }
    return den == 0.0 ? num : num / den;
}

} // namespace

TEST(RaisedCosine, Examples) {
    EXPECT_EQ(raised_cosine_weights(0.0, 4), (std::vector<double>{1, 1, 1, 1}));
    EXPECT_EQ(raised_cosine_weights(0.5, 4), (std::vector<double>{0, 1, 2, 1}));
    EXPECT_EQ(raised_cosine_weights(0.25, 4), (std::vector<double>{0.5, 1, 1.5, 1}));
}

TEST(RaisedCosine, EndpointsForAnyLength) {
    for (std::size_t n : {1u, 2u, 3u, 7u, 64u, 65u}) {
        for (double w : raised_cosine_weights(0.0, n))
            EXPECT_EQ(w, 1.0);
        EXPECT_EQ(raised_cosine_weights(0.5, n)[0], 0.0);
    }
}

TEST(RaisedCosine, MatchesFormula) {
    const auto w = raised_cosine_weights(0.37, 13);
    for (std::size_t i = 0; i < w.size(); ++i)
        EXPECT_NEAR(w[i], 1.0 - 2.0 * 0.37 * std::cos(2.0 * oracle::pi * i / 13.0), 1e-15);
}

TEST(RaisedCosine, RejectsAlphaOutsideRange) {
    EXPECT_THROW(raised_cosine_weights(-0.01, 8), ConstraintError);
    EXPECT_THROW(raised_cosine_weights(0.5000001, 8), ConstraintError);
    EXPECT_THROW(RaisedCosineWindow(0.7, 8), ConstraintError);
    EXPECT_THROW(raised_cosine_weights(0.2, 0), SizeError);
}

TEST(ComplexTypes, Invariants) {
    EXPECT_THROW(ComplexVector(std::vector<cplx>{}), SizeError);
    EXPECT_THROW(ComplexVector({cplx(1.0, std::nan(""))}), ConstraintError);
    EXPECT_THROW(ComplexSpectrum({cplx(INFINITY, 0.0)}), ConstraintError);

    const ComplexSpectrum s({1.0, 2.0, 3.0, 4.0});
    EXPECT_EQ(s.at(-1), cplx(4.0));
    EXPECT_EQ(s.at(4), cplx(1.0));
    EXPECT_EQ(s.at(-9), cplx(4.0));
    EXPECT_EQ(s.at(6), cplx(3.0));
}

TEST(Dft, Examples) {
    const auto impulse = dft(ComplexVector({1.0}), 4);
    for (const auto& b : impulse.bins())
        EXPECT_NEAR(std::abs(b - cplx(1.0)), 0.0, 1e-15);

    const auto dc = dft(ComplexVector({1.0, 1.0, 1.0, 1.0}), 4);
    EXPECT_NEAR(std::abs(dc[0] - cplx(4.0)), 0.0, 1e-14);
    for (std::size_t k = 1; k < 4; ++k)
        EXPECT_NEAR(std::abs(dc[k]), 0.0, 1e-14);

    // Quarter-rate exponential, 8 points: direct summation puts |X| = 4 at bin 2.
    std::vector<cplx> tone(4);
    for (std::size_t m = 0; m < 4; ++m)
        tone[m] = std::exp(cplx(0.0, 2.0 * oracle::pi * 0.25 * m));
    const auto expected = oracle::direct_dft(tone, 8);
    ASSERT_NEAR(std::abs(expected[2]), 4.0, 1e-12);
    const auto got = dft(ComplexVector(tone), 8);
    std::size_t argmax = 0;
    for (std::size_t k = 1; k < 8; ++k)
        if (std::abs(got[k]) > std::abs(got[argmax]))
            argmax = k;
    EXPECT_EQ(argmax, 2u);
    EXPECT_NEAR(std::abs(got[2]), 4.0, 1e-12);
}

TEST(Dft, RejectsShortTransform) {
    EXPECT_THROW(dft(ComplexVector({1.0, 2.0, 3.0}), 2), SizeError);
}

TEST(Dft, MatchesDirectSummation) {
    std::mt19937_64 rng(11);
    for (std::size_t M : {1u, 5u, 16u, 64u}) {
        for (std::size_t n : {M, 2 * M + 3, 8 * M}) {
            const auto x = oracle::random_complex(rng, M);
            const auto ref = oracle::direct_dft(x, n);
            EXPECT_LT(max_rel_error(dft(ComplexVector(x), n).bins(), ref), 1e-10)
                << "M=" << M << " n=" << n;
        }
    }
}

TEST(Dft, InverseRoundTrip) {
    std::mt19937_64 rng(12);
    for (std::size_t n : {1u, 7u, 64u, 256u}) {
        const auto x = oracle::random_complex(rng, n);
        const auto back = idft(dft(ComplexVector(x), n));
        EXPECT_LT(max_rel_error(back.samples(), x), 1e-12) << n;
    }
}

TEST(Dft, Linearity) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = oracle::random_complex(rng, 9);
        const auto y = oracle::random_complex(rng, 9);
        const cplx a(0.7, -1.3), b(-2.1, 0.4);
        std::vector<cplx> comb(9);
        for (std::size_t i = 0; i < 9; ++i)
            comb[i] = a * x[i] + b * y[i];
        const auto X = dft(ComplexVector(x), 32);
        const auto Y = dft(ComplexVector(y), 32);
        std::vector<cplx> rhs(32);
        for (std::size_t k = 0; k < 32; ++k)
            rhs[k] = a * X[k] + b * Y[k];
        EXPECT_LT(max_rel_error(dft(ComplexVector(comb), 32).bins(), rhs), 1e-12);
    }
}

TEST(Dft, Parseval) {
    std::mt19937_64 rng(14);
    for (std::size_t n : {8u, 100u, 1024u}) {
        const auto x = oracle::random_complex(rng, n / 4 + 1);
        double et = 0.0, ef = 0.0;
        for (const auto& v : x)
            et += std::norm(v);
        const auto X = dft(ComplexVector(x), n);
        for (const auto& v : X.bins())
            ef += std::norm(v);
        EXPECT_NEAR(ef / static_cast<double>(n), et, 1e-10 * et);
    }
}

TEST(WindowTime, Examples) {
    const auto id = apply_window_time(ComplexVector({1.0, 1.0, 1.0, 1.0}), RaisedCosineWindow(0.0, 4));
    EXPECT_EQ(id, ComplexVector({1.0, 1.0, 1.0, 1.0}));
    const auto h = apply_window_time(ComplexVector({2.0, 2.0, 2.0, 2.0}), RaisedCosineWindow(0.5, 4));
    EXPECT_EQ(h, ComplexVector({0.0, 2.0, 4.0, 2.0}));
    EXPECT_THROW(apply_window_time(ComplexVector({1.0, 2.0}), RaisedCosineWindow(0.1, 3)), SizeError);
}

TEST(WindowFreq, Examples) {
    // K = 1 so the neighbours are adjacent bins.
    const ComplexSpectrum zeros({0.0, 1.0, 0.0, 0.0});
    EXPECT_EQ(apply_window_freq(zeros, 1, 1, 0.37), cplx(1.0));
    const ComplexSpectrum ones({1.0, 1.0, 1.0, 0.0});
    EXPECT_EQ(apply_window_freq(ones, 1, 1, 0.5), cplx(0.0));
    const ComplexSpectrum cancel({1.0, 2.0, -1.0, 0.0});
    EXPECT_EQ(apply_window_freq(cancel, 1, 1, 0.3), cplx(2.0));
}

TEST(WindowFreq, CircularAtEdges) {
    const ComplexSpectrum s({5.0, 1.0, 2.0, 3.0});
    // Bin 0 with K = 1 reads bins 3 and 1.
    EXPECT_EQ(apply_window_freq(s, 0, 1, 0.5), cplx(5.0 - 0.5 * 3.0 - 0.5 * 1.0));
}

// Windowing in time and the three-tap form in frequency agree exactly when
// N = K M and indices wrap.
TEST(WindowFreq, TimeFrequencyEquivalenceProperty) {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> alphaDist(0.0, 0.5);
    std::uniform_int_distribution<std::size_t> mDist(2, 40);
    std::uniform_int_distribution<std::size_t> kDist(1, 8);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t M = mDist(rng), K = kDist(rng), n = K * M;
        const double alpha = trial == 0 ? 0.0 : (trial == 1 ? 0.5 : alphaDist(rng));
        const ComplexVector x(oracle::random_complex(rng, M));
        const auto lhs = dft(apply_window_time(x, RaisedCosineWindow(alpha, M)), n);
        const auto rhs = apply_window_freq(dft(x, n), padding_factor(n, M), alpha);
        EXPECT_LT(max_rel_error(lhs.bins(), rhs.bins()), 1e-10)
            << "M=" << M << " K=" << K << " alpha=" << alpha;
    }
}

TEST(PaddingFactor, RequiresMultiple) {
    EXPECT_EQ(padding_factor(1024, 64), 16u);
    EXPECT_THROW(padding_factor(1000, 64), ConstraintError);
    EXPECT_THROW(padding_factor(0, 64), ConstraintError);
}
