#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace situp;
using situp::test::random_image;

namespace {

double channel_sum(const FeatureStack& f, int k)
{
    double s = 0.0;
    for (double v : f.channels[static_cast<std::size_t>(k)].data) {
        s += v;
    }
    return s;
}

int argmax_channel(const FeatureStack& f, int first, int count)
{
    int best = first;
    for (int k = first; k < first + count; ++k) {
        if (channel_sum(f, k) > channel_sum(f, best)) {
            best = k;
        }
    }
    return best - first;
}

ImagePlane rotate180(const ImagePlane& img)
{
    ImagePlane out(img.width, img.height, img.channels);
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            for (int k = 0; k < img.channels; ++k) {
                out.at(img.height - 1 - r, img.width - 1 - c, k) = img.at(r, c, k);
            }
        }
    }
    return out;
}

ImagePlane rotate90(const ImagePlane& img)
{
    ImagePlane out(img.height, img.width, img.channels);
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            out.at(c, img.height - 1 - r) = img.at(r, c);
        }
    }
    return out;
}

// Per-pixel orientation histogram over the full patch: central differences,
// angle snapped to the nearest multiple of 20 degrees, magnitude-weighted.
std::array<double, 18> orientation_histogram(const ImagePlane& img)
{
    std::array<double, 18> h{};
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            const double gx = img.at(r, std::min(c + 1, img.width - 1)) - img.at(r, std::max(c - 1, 0));
            const double gy = img.at(std::min(r + 1, img.height - 1), c) - img.at(std::max(r - 1, 0), c);
            const double mag = std::hypot(gx, gy);
            if (mag == 0.0) {
                continue;
            }
            double deg = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
            if (deg < 0.0) {
                deg += 360.0;
            }
            h[static_cast<std::size_t>(static_cast<int>(std::lround(deg / 20.0)) % 18)] += mag;
        }
    }
    return h;
}

ImagePlane sinusoid(int size, double theta_deg, double wavelength)
{
    ImagePlane img(size, size, 1);
    const double th = theta_deg * std::numbers::pi / 180.0;
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            const double t = (c * std::cos(th) + r * std::sin(th)) * 2.0 * std::numbers::pi / wavelength;
            img.at(r, c) = 127.5 + 100.0 * std::sin(t);
        }
    }
    return img;
}

}  // namespace

TEST(Hog31, ShapeAndConstantPatch)
{
    ImagePlane img(32, 24, 3, 120.0);
    const auto f = hog31(img, 4);
    EXPECT_EQ(f.channel_count(), 31);
    EXPECT_EQ(f.width, 8);
    EXPECT_EQ(f.height, 6);
    for (const auto& ch : f.channels) {
        for (double v : ch.data) {
            EXPECT_EQ(v, 0.0);
        }
    }
}

TEST(Hog31, GridIsFloorOfPatchOverCell)
{
    ImagePlane img(35, 27, 1, 10.0);
    const auto f = hog31(img, 4);
    EXPECT_EQ(f.width, 8);
    EXPECT_EQ(f.height, 6);
    EXPECT_THROW((void)hog31(ImagePlane(7, 40, 1), 4), Error);
}

TEST(Hog31, VerticalEdgeUsesHorizontalGradientBins)
{
    ImagePlane img(32, 32, 1);
    for (int r = 0; r < 32; ++r) {
        for (int c = 16; c < 32; ++c) {
            img.at(r, c) = 255.0;
        }
    }
    const auto f = hog31(img, 4);
    EXPECT_EQ(argmax_channel(f, 0, 18), 0);
    EXPECT_EQ(argmax_channel(f, 18, 9), 0);
    for (int o = 1; o < 18; ++o) {
        EXPECT_EQ(channel_sum(f, o), 0.0);
    }

    // A quarter turn moves the energy to the two bins either side of 90 deg.
    const auto g = hog31(rotate90(img), 4);
    const double vertical = channel_sum(g, 18 + 4) + channel_sum(g, 18 + 5);
    double total = 0.0;
    for (int o = 0; o < 9; ++o) {
        total += channel_sum(g, 18 + o);
    }
    EXPECT_GT(total, 0.0);
    EXPECT_NEAR(vertical / total, 1.0, 1e-12);
}

TEST(Hog31, HalfTurnPermutesOrientations)
{
    std::mt19937_64 rng(1);
    const auto img = random_image(rng, 24, 20, 1);
    const auto f = hog31(img, 4);
    const auto g = hog31(rotate180(img), 4);
    const int cw = f.width;
    const int ch = f.height;
    const int block_map[4] = {3, 2, 1, 0};
    for (int cy = 0; cy < ch; ++cy) {
        for (int cx = 0; cx < cw; ++cx) {
            const int ry = ch - 1 - cy;
            const int rx = cw - 1 - cx;
            for (int o = 0; o < 18; ++o) {
                EXPECT_NEAR(g.channels[static_cast<std::size_t>((o + 9) % 18)].at(ry, rx), f.channels[static_cast<std::size_t>(o)].at(cy, cx), 1e-12);
            }
            for (int o = 0; o < 9; ++o) {
                EXPECT_NEAR(g.channels[static_cast<std::size_t>(18 + o)].at(ry, rx), f.channels[static_cast<std::size_t>(18 + o)].at(cy, cx), 1e-12);
            }
            for (int k = 0; k < 4; ++k) {
                EXPECT_NEAR(g.channels[static_cast<std::size_t>(27 + block_map[k])].at(ry, rx), f.channels[static_cast<std::size_t>(27 + k)].at(cy, cx), 1e-12);
            }
        }
    }
}

TEST(Hog31, SinusoidDominantBinMatchesPixelOracle)
{
    for (double theta : {0.0, 40.0, 60.0, 120.0, 160.0}) {
        const auto img = sinusoid(64, theta, 16.0);
        const auto f = hog31(img, 4);
        const auto hist = orientation_histogram(img);
        int oracle = 0;
        for (int o = 0; o < 18; ++o) {
            if (hist[static_cast<std::size_t>(o)] > hist[static_cast<std::size_t>(oracle)]) {
                oracle = o;
            }
        }
        const int expected = static_cast<int>(std::lround(theta / 20.0)) % 9;
        EXPECT_EQ(oracle % 9, expected) << theta;
        EXPECT_EQ(argmax_channel(f, 18, 9), expected) << theta;
        EXPECT_EQ(argmax_channel(f, 0, 18) % 9, expected) << theta;
    }
}

TEST(Hog31, InvariantToIntensityOffset)
{
    std::mt19937_64 rng(2);
    const auto img = random_image(rng, 32, 28, 3, 0, 200);
    auto shifted = img;
    for (auto& v : shifted.data) {
        v += 50.0;
    }
    const auto a = hog31(img, 4);
    const auto b = hog31(shifted, 4);
    for (std::size_t k = 0; k < a.channels.size(); ++k) {
        EXPECT_EQ(a.channels[k].data, b.channels[k].data);
    }
}

TEST(Hog31, NearlyInvariantToIntensityScale)
{
    std::mt19937_64 rng(3);
    const auto img = random_image(rng, 32, 28, 1);
    auto half = img;
    for (auto& v : half.data) {
        v *= 0.5;
    }
    const auto a = hog31(img, 4);
    const auto b = hog31(half, 4);
    for (std::size_t k = 0; k < a.channels.size(); ++k) {
        for (std::size_t i = 0; i < a.channels[k].size(); ++i) {
            EXPECT_NEAR(a.channels[k].data[i], b.channels[k].data[i], 1e-6);
        }
    }
}

TEST(ColorNames, ConstantPatchGivesTableRow)
{
    const auto table = ColorNameTable::prototypes();
    ImagePlane img(16, 12, 3);
    for (int r = 0; r < 12; ++r) {
        for (int c = 0; c < 16; ++c) {
            img.at(r, c, 0) = 200.0;
            img.at(r, c, 1) = 40.0;
            img.at(r, c, 2) = 90.0;
        }
    }
    const auto f = color_names(img, table, 4);
    ASSERT_EQ(f.channel_count(), 11);
    const auto& row = table.lookup(200, 40, 90);
    for (int k = 0; k < 11; ++k) {
        for (double v : f.channels[static_cast<std::size_t>(k)].data) {
            EXPECT_NEAR(v, row[static_cast<std::size_t>(k)], 1e-15);
        }
    }
}

TEST(ColorNames, CellsStayOnSimplex)
{
    const auto table = ColorNameTable::prototypes();
    std::mt19937_64 rng(4);
    const auto f = color_names(random_image(rng, 40, 36, 3), table, 4);
    for (int i = 0; i < f.width * f.height; ++i) {
        double s = 0.0;
        for (const auto& ch : f.channels) {
            EXPECT_GE(ch.data[static_cast<std::size_t>(i)], 0.0);
            s += ch.data[static_cast<std::size_t>(i)];
        }
        EXPECT_NEAR(s, 1.0, 1e-4);
    }
}

TEST(ColorNames, MatchesPerPixelPoolingOracle)
{
    const auto table = ColorNameTable::prototypes();
    std::mt19937_64 rng(5);
    const auto img = random_image(rng, 20, 16, 3);
    const auto f = color_names(img, table, 4);
    for (int cy = 0; cy < 4; ++cy) {
        for (int cx = 0; cx < 5; ++cx) {
            for (int k = 0; k < 11; ++k) {
                double s = 0.0;
                for (int y = 0; y < 4; ++y) {
                    for (int x = 0; x < 4; ++x) {
                        const int r = static_cast<int>(img.at(cy * 4 + y, cx * 4 + x, 0));
                        const int g = static_cast<int>(img.at(cy * 4 + y, cx * 4 + x, 1));
                        const int b = static_cast<int>(img.at(cy * 4 + y, cx * 4 + x, 2));
                        s += table.row((r / 8) * 1024 + (g / 8) * 32 + b / 8)[static_cast<std::size_t>(k)];
                    }
                }
                EXPECT_NEAR(f.channels[static_cast<std::size_t>(k)].at(cy, cx), s / 16.0, 1e-10);
            }
        }
    }
}

TEST(ColorNames, RejectsGrayscale)
{
    const auto table = ColorNameTable::prototypes();
    try {
        (void)color_names(ImagePlane(8, 8, 1), table, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::GrayscaleInput);
    }
}

TEST(ColorNameTable, RejectsNonSimplexRows)
{
    std::vector<ColorNameTable::Row> rows(kColorNameBins, ColorNameTable::Row{});
    EXPECT_THROW((void)ColorNameTable(rows), Error);
    EXPECT_THROW((void)ColorNameTable(std::vector<ColorNameTable::Row>(10)), Error);
}

TEST(ColorNameTable, BinaryRoundTrip)
{
    situp::test::TempDir dir("cn");
    const auto table = ColorNameTable::prototypes();
    table.save_binary(dir.path() / "t.bin");
    const auto back = ColorNameTable::load(dir.path() / "t.bin");
    for (int i = 0; i < kColorNameBins; i += 997) {
        for (int k = 0; k < 11; ++k) {
            EXPECT_NEAR(back.row(i)[static_cast<std::size_t>(k)], table.row(i)[static_cast<std::size_t>(k)], 1e-7);
        }
    }
}

TEST(GrayFeature, Extremes)
{
    const auto black = gray_feature(ImagePlane(8, 8, 1, 0.0), 4);
    const auto white = gray_feature(ImagePlane(8, 8, 1, 255.0), 4);
    for (double v : black.channels[0].data) {
        EXPECT_EQ(v, -0.5);
    }
    for (double v : white.channels[0].data) {
        EXPECT_EQ(v, 0.5);
    }
}

TEST(GrayFeature, AlignedCheckerboardAveragesToZero)
{
    ImagePlane img(8, 8, 1);
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            img.at(r, c) = ((r + c) % 2) ? 255.0 : 0.0;
        }
    }
    const auto f = gray_feature(img, 2);
    for (double v : f.channels[0].data) {
        EXPECT_EQ(v, 0.0);
    }
}

TEST(BuildStack, ChannelCounts)
{
    const auto table = std::make_shared<const ColorNameTable>(ColorNameTable::prototypes());
    std::mt19937_64 rng(6);
    FeatureConfig cfg;
    const auto rgb = build_stack(random_image(rng, 40, 32, 3), cfg, table.get());
    EXPECT_EQ(rgb.channel_count(), 43);
    EXPECT_EQ(rgb.width, 10);
    EXPECT_EQ(rgb.height, 8);
    EXPECT_EQ(expected_channels(cfg, true, true), 43);
    const auto gray = build_stack(random_image(rng, 40, 32, 1), cfg, table.get());
    EXPECT_EQ(gray.channel_count(), 32);
    EXPECT_EQ(expected_channels(cfg, false, true), 32);
}

TEST(BuildStack, GrayOnlyEqualsGrayFeature)
{
    std::mt19937_64 rng(7);
    const auto img = random_image(rng, 24, 24, 3);
    FeatureConfig cfg;
    cfg.hog = false;
    cfg.color_names = false;
    const auto s = build_stack(img, cfg, nullptr);
    ASSERT_EQ(s.channel_count(), 1);
    EXPECT_EQ(s.channels[0].data, gray_feature(img, 4).channels[0].data);
}

TEST(BuildStack, ChannelOrderIsHogColorGray)
{
    const auto table = ColorNameTable::prototypes();
    std::mt19937_64 rng(8);
    const auto img = random_image(rng, 24, 20, 3);
    const auto s = build_stack(img, FeatureConfig{}, &table);
    const auto h = hog31(img, 4);
    const auto c = color_names(img, table, 4);
    const auto g = gray_feature(img, 4);
    for (int k = 0; k < 31; ++k) {
        EXPECT_EQ(s.channels[static_cast<std::size_t>(k)].data, h.channels[static_cast<std::size_t>(k)].data);
    }
    for (int k = 0; k < 11; ++k) {
        EXPECT_EQ(s.channels[static_cast<std::size_t>(31 + k)].data, c.channels[static_cast<std::size_t>(k)].data);
    }
    EXPECT_EQ(s.channels[42].data, g.channels[0].data);
}
