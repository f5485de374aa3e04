#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace situp;
using situp::test::random_grid;
using situp::test::random_stack;

namespace {

GaussianLabels labels_from(RealGrid grid)
{
    GaussianLabels y;
    y.spectrum = dft2(grid);
    y.grid = std::move(grid);
    y.sigma = 0.0;
    return y;
}

FeatureStack shift_stack(const FeatureStack& s, int dr, int dc)
{
    FeatureStack out = s;
    for (auto& ch : out.channels) {
        ch = cyclic_shift(ch, dr, dc);
    }
    return out;
}

// Windowed real features of a textured synthetic patch, 8x8 cells.
FeatureStack textured_features()
{
    std::mt19937_64 rng(99);
    ImagePlane img(32, 32, 3);
    for (int r = 0; r < 32; ++r) {
        for (int c = 0; c < 32; ++c) {
            const double base = ((r / 3 + c / 5) % 2) ? 200.0 : 40.0;
            for (int k = 0; k < 3; ++k) {
                img.at(r, c, k) = std::clamp(base + std::uniform_real_distribution<double>(-30.0, 30.0)(rng) + 20.0 * k, 0.0, 255.0);
            }
        }
    }
    const auto table = ColorNameTable::prototypes();
    return apply_window(build_stack(img, FeatureConfig{}, &table), make_cosine_window(8, 8));
}

double max_abs(const SpectralGrid& g)
{
    double m = 0.0;
    for (const auto& v : g.data) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

}  // namespace

TEST(GaussianLabels, PeakAndWrap)
{
    const auto y = gaussian_labels(8, 8, 1.5);
    EXPECT_EQ(y.grid.at(0, 0), 1.0);
    EXPECT_EQ(y.grid.at(1, 0), y.grid.at(7, 0));
    EXPECT_EQ(y.grid.at(0, 3), y.grid.at(0, 5));
    EXPECT_NEAR(y.grid.at(0, 1), std::exp(-1.0 / (2.0 * 1.5 * 1.5)), 1e-15);
    const auto wide = gaussian_labels(10, 6, 100.0);
    const double floor = std::exp(-(100.0 + 36.0) / (8.0 * 100.0 * 100.0));
    for (double v : wide.grid.data) {
        EXPECT_GE(v, floor);
        EXPECT_LE(v, 1.0);
    }
}

TEST(LinearKernel, ImpulseAutocorrelationIsFlat)
{
    RealGrid x(6, 4);
    x.at(0, 0) = 1.0;
    const SpectralStack xs{dft2(x)};
    const auto k = linear_kernel_corr(xs, xs);
    for (const auto& v : k.data) {
        EXPECT_NEAR(std::abs(v - Complex(1.0, 0.0)), 0.0, 1e-15);
    }
}

TEST(LinearKernel, AdditiveOverChannels)
{
    std::mt19937_64 rng(1);
    const auto x = to_spectral(random_stack(rng, 7, 5, 2));
    const auto z = to_spectral(random_stack(rng, 7, 5, 2));
    const auto both = linear_kernel_corr(x, z);
    const auto a = linear_kernel_corr({x[0]}, {z[0]});
    const auto b = linear_kernel_corr({x[1]}, {z[1]});
    for (std::size_t i = 0; i < both.size(); ++i) {
        EXPECT_LT(std::abs(both.data[i] - (a.data[i] + b.data[i])), 1e-12);
    }
}

TEST(LinearKernel, SpatialKernelMatchesSummedCorrelation)
{
    std::mt19937_64 rng(2);
    const auto xs = random_stack(rng, 8, 8, 3);
    const auto zs = random_stack(rng, 8, 8, 3);
    const auto k = idft2(linear_kernel_corr(to_spectral(xs), to_spectral(zs)));
    for (int dr = 0; dr < 8; ++dr) {
        for (int dc = 0; dc < 8; ++dc) {
            double s = 0.0;
            for (int ch = 0; ch < 3; ++ch) {
                for (int r = 0; r < 8; ++r) {
                    for (int c = 0; c < 8; ++c) {
                        s += xs.channels[ch].at(r, c) * zs.channels[ch].at((r + dr) % 8, (c + dc) % 8);
                    }
                }
            }
            EXPECT_NEAR(k.at(dr, dc), s, 1e-8);
        }
    }
}

TEST(Train, ZeroTargetsGiveZeroCoefficients)
{
    std::mt19937_64 rng(3);
    const auto m = train(random_stack(rng, 6, 6, 2), labels_from(RealGrid(6, 6)), 3e-4);
    for (const auto& v : m.alphahat.data) {
        EXPECT_EQ(v, Complex(0.0, 0.0));
    }
}

TEST(Train, LinearInTargets)
{
    std::mt19937_64 rng(4);
    const auto x = random_stack(rng, 8, 6, 3);
    const auto y = gaussian_labels(8, 6, 1.0);
    RealGrid y2 = y.grid;
    RealGrid y3 = y.grid;
    for (auto& v : y2.data) {
        v *= 2.0;
    }
    for (auto& v : y3.data) {
        v *= 3.0;
    }
    const auto m1 = train(x, y, 3e-4);
    const auto m2 = train(x, labels_from(y2), 3e-4);
    const auto m3 = train(x, labels_from(y3), 3e-4);
    for (std::size_t i = 0; i < m1.alphahat.size(); ++i) {
        EXPECT_EQ(m2.alphahat.data[i], 2.0 * m1.alphahat.data[i]);
        EXPECT_LT(std::abs(m3.alphahat.data[i] - 3.0 * m1.alphahat.data[i]), 1e-12 * (1.0 + std::abs(m3.alphahat.data[i])));
    }
}

TEST(Train, RejectsBadInput)
{
    std::mt19937_64 rng(5);
    EXPECT_THROW((void)train(random_stack(rng, 4, 4, 1), gaussian_labels(4, 4, 1.0), 0.0), Error);
    EXPECT_THROW((void)train(random_stack(rng, 4, 4, 1), gaussian_labels(5, 4, 1.0), 1e-3), Error);
}

TEST(RidgeDuality, DualPredictionsMatchPrimalSolve)
{
    std::mt19937_64 rng(6);
    for (int n : {4, 8, 16}) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto xg = random_grid(rng, n, 1);
            const auto yg = random_grid(rng, n, 1);
            const auto zg = random_grid(rng, n, 1);
            const double lambda = 0.05;
            FeatureStack x(n, 1, 1);
            x.channels[0] = xg;
            FeatureStack z(n, 1, 1);
            z.channels[0] = zg;
            const auto response = detect(train(x, labels_from(yg), lambda), z).grid;

            // The dual kernel is normalized by 1 / (N * C), which rescales the
            // primal regularizer by N * C.
            const auto w = ridge_regression_oracle(xg.data, yg.data, lambda * n);
            for (int d = 0; d < n; ++d) {
                double pred = 0.0;
                for (int j = 0; j < n; ++j) {
                    pred += w[static_cast<std::size_t>(j)] * zg.data[static_cast<std::size_t>((j + d) % n)];
                }
                EXPECT_NEAR(response.data[static_cast<std::size_t>(d)], pred, 1e-6) << "n=" << n << " d=" << d;
            }
        }
    }
}

TEST(RidgeOracle, ImpulseReproducesTargets)
{
    std::vector<double> x(8, 0.0);
    x[0] = 1.0;
    const std::vector<double> y{0.1, -0.4, 2.0, 0.0, 1.5, 0.3, -1.0, 0.7};
    const auto w = ridge_regression_oracle(x, y, 1e-12);
    for (std::size_t i = 0; i < 8; ++i) {
        double pred = 0.0;
        for (std::size_t j = 0; j < 8; ++j) {
            pred += w[j] * x[(j + i) % 8];
        }
        EXPECT_NEAR(pred, y[i], 1e-9);
    }
}

TEST(RidgeOracle, HeavyRegularizationLimit)
{
    std::mt19937_64 rng(7);
    const auto xg = random_grid(rng, 8, 1);
    const auto yg = random_grid(rng, 8, 1);
    const double lambda = 1e6;
    const auto w = ridge_regression_oracle(xg.data, yg.data, lambda);
    for (std::size_t j = 0; j < 8; ++j) {
        double xty = 0.0;
        for (std::size_t i = 0; i < 8; ++i) {
            xty += xg.data[(j + i) % 8] * yg.data[i];
        }
        EXPECT_NEAR(w[j], xty / lambda, 1e-4 * std::abs(xty / lambda) + 1e-12);
    }
}

TEST(Detect, SelfDetectionPeaksAtOrigin)
{
    const auto x = textured_features();
    const auto y = gaussian_labels(8, 8, 0.8);
    const auto r = detect(train(x, y, 3e-4), x);
    EXPECT_EQ(r.peak_pos, (Cell{0, 0}));
    EXPECT_GE(r.peak_value, 0.7);
    EXPECT_LE(r.peak_value, 1.0);
}

TEST(Detect, CyclicShiftMovesPeakExactly)
{
    const auto x = textured_features();
    const auto m = train(x, gaussian_labels(8, 8, 0.8), 3e-4);
    for (int dr = 0; dr < 8; ++dr) {
        for (int dc = 0; dc < 8; ++dc) {
            const auto r = detect(m, shift_stack(x, dr, dc));
            EXPECT_EQ(r.peak_pos, (Cell{dr, dc})) << dr << "," << dc;
        }
    }
}

TEST(Detect, InvariantUnderCommonShift)
{
    std::mt19937_64 rng(8);
    const auto x = random_stack(rng, 8, 8, 4);
    const auto z = random_stack(rng, 8, 8, 4);
    const auto y = gaussian_labels(8, 8, 1.0);
    const auto a = detect(train(x, y, 3e-4), z).grid;
    const auto b = detect(train(shift_stack(x, 3, 5), y, 3e-4), shift_stack(z, 3, 5)).grid;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a.data[i], b.data[i], 1e-10);
    }
}

TEST(Detect, ZeroInputGivesFlatResponse)
{
    std::mt19937_64 rng(9);
    const auto m = train(random_stack(rng, 6, 6, 2), gaussian_labels(6, 6, 1.0), 3e-4);
    const auto r = detect(m, FeatureStack(6, 6, 2));
    for (double v : r.grid.data) {
        EXPECT_EQ(v, 0.0);
    }
    EXPECT_EQ(r.apce, 0.0);
    EXPECT_EQ(r.peak_pos, (Cell{0, 0}));
}

TEST(Detect, ChannelMismatchThrows)
{
    std::mt19937_64 rng(10);
    const auto m = train(random_stack(rng, 6, 6, 2), gaussian_labels(6, 6, 1.0), 3e-4);
    EXPECT_THROW((void)detect(m, random_stack(rng, 6, 6, 3)), Error);
}

TEST(DecodeDisplacement, WrapConvention)
{
    EXPECT_EQ(decode_displacement({0, 0}, 10, 8), (Displacement{0, 0}));
    EXPECT_EQ(decode_displacement({7, 0}, 10, 8), (Displacement{-1, 0}));
    EXPECT_EQ(decode_displacement({4, 5}, 10, 8), (Displacement{4, 5}));
    EXPECT_EQ(decode_displacement({5, 6}, 10, 8), (Displacement{-3, -4}));
    EXPECT_EQ(decode_displacement({2, 3}, 7, 5), (Displacement{2, 3}));
    EXPECT_EQ(decode_displacement({3, 4}, 7, 5), (Displacement{-2, -3}));
}

TEST(Update, ThetaExtremes)
{
    std::mt19937_64 rng(11);
    const auto y = gaussian_labels(6, 6, 1.0);
    const auto x0 = random_stack(rng, 6, 6, 2);
    const auto x1 = random_stack(rng, 6, 6, 2);

    const auto frozen = update(train(x0, y, 3e-4, 0.0), x1, y);
    const auto start = train(x0, y, 3e-4, 0.0);
    EXPECT_EQ(frozen.alphahat.data, start.alphahat.data);
    EXPECT_EQ(frozen.xhat[1].data, start.xhat[1].data);

    const auto replaced = update(train(x0, y, 3e-4, 1.0), x1, y);
    const auto fresh = train(x1, y, 3e-4, 1.0);
    EXPECT_EQ(replaced.alphahat.data, fresh.alphahat.data);
    EXPECT_EQ(replaced.xhat[0].data, fresh.xhat[0].data);
}

TEST(Update, FixedPoint)
{
    std::mt19937_64 rng(12);
    const auto y = gaussian_labels(6, 6, 1.0);
    const auto x = random_stack(rng, 6, 6, 2);
    const auto m = train(x, y, 3e-4, 0.004);
    const auto u = update(m, x, y);
    for (std::size_t i = 0; i < m.alphahat.size(); ++i) {
        EXPECT_LT(std::abs(u.alphahat.data[i] - m.alphahat.data[i]), 1e-12 * (1.0 + std::abs(m.alphahat.data[i])));
    }
}

TEST(Update, TelescopesGeometrically)
{
    std::mt19937_64 rng(13);
    const auto y = gaussian_labels(6, 6, 1.0);
    const double theta = 0.25;
    auto m = train(random_stack(rng, 6, 6, 2), y, 3e-4, theta);
    const auto x_new = random_stack(rng, 6, 6, 2);
    const auto target = train(x_new, y, 3e-4, theta);
    auto gap = [&](const TrackerModel& a) {
        SpectralGrid d = a.alphahat;
        for (std::size_t i = 0; i < d.size(); ++i) {
            d.data[i] -= target.alphahat.data[i];
        }
        return max_abs(d);
    };
    const double g0 = gap(m);
    for (int k = 1; k <= 10; ++k) {
        m = update(m, x_new, y);
        EXPECT_NEAR(gap(m), g0 * std::pow(1.0 - theta, k), 1e-9 * g0);
    }
}
