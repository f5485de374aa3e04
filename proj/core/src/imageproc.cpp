#include "situp/imageproc.hpp"

#include "situp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace situp {

void FeatureStack::append(const FeatureStack& other)
{
    if (channels.empty()) {
        width = other.width;
        height = other.height;
    } else if (other.width != width || other.height != height) {
        throw Error(ErrorCode::DimensionMismatch, "feature stacks have different grids");
    }
    channels.insert(channels.end(), other.channels.begin(), other.channels.end());
}

SpectralStack to_spectral(const FeatureStack& features)
{
    SpectralStack out;
    out.reserve(features.channels.size());
    for (const auto& ch : features.channels) {
        out.push_back(dft2(ch));
    }
    return out;
}

ImagePlane::ImagePlane(int w, int h, int ch, double fill)
    : width(w), height(h), channels(ch),
      data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * static_cast<std::size_t>(ch), fill)
{
}

namespace {

std::vector<double> hann(int n)
{
    std::vector<double> out(static_cast<std::size_t>(n), 1.0);
    if (n == 1) {
        return out;
    }
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
    }
    return out;
}

}  // namespace

CosineWindow make_cosine_window(int width, int height)
{
    if (width < 1 || height < 1) {
        throw Error(ErrorCode::DimensionMismatch, "cosine window needs positive dimensions");
    }
    const auto cols = hann(width);
    const auto rows = hann(height);
    CosineWindow win{width, height, RealGrid(width, height)};
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            win.weights.at(r, c) = rows[static_cast<std::size_t>(r)] * cols[static_cast<std::size_t>(c)];
        }
    }
    return win;
}

ImagePlane extract_patch(const ImagePlane& img, const Rect& region)
{
    const int pw = std::max(1, static_cast<int>(std::lround(region.w)));
    const int ph = std::max(1, static_cast<int>(std::lround(region.h)));
    const int left = static_cast<int>(std::lround(region.cx - pw / 2.0));
    const int top = static_cast<int>(std::lround(region.cy - ph / 2.0));

    ImagePlane out(pw, ph, img.channels);
    for (int r = 0; r < ph; ++r) {
        const int sr = std::clamp(top + r, 0, img.height - 1);
        for (int c = 0; c < pw; ++c) {
            const int sc = std::clamp(left + c, 0, img.width - 1);
            for (int ch = 0; ch < img.channels; ++ch) {
                out.at(r, c, ch) = img.at(sr, sc, ch);
            }
        }
    }
    return out;
}

ImagePlane sample_patch(const ImagePlane& img, const Rect& region, int out_w, int out_h)
{
    if (out_w < 1 || out_h < 1) {
        throw Error(ErrorCode::DimensionMismatch, "output patch size must be positive");
    }
    const double step_x = region.w / out_w;
    const double step_y = region.h / out_h;
    const double left = region.cx - region.w / 2.0;
    const double top = region.cy - region.h / 2.0;

    // Precompute the two source taps and weights per output column/row.
    struct Tap {
        int i0;
        int i1;
        double w1;
    };
    auto taps = [](int count, double origin, double step, int limit) {
        std::vector<Tap> out(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) {
            const double s = origin + (i + 0.5) * step - 0.5;
            const double fl = std::floor(s);
            const double frac = s - fl;
            const int base = static_cast<int>(fl);
            out[static_cast<std::size_t>(i)] = {std::clamp(base, 0, limit - 1), std::clamp(base + 1, 0, limit - 1), frac};
        }
        return out;
    };
    const auto xs = taps(out_w, left, step_x, img.width);
    const auto ys = taps(out_h, top, step_y, img.height);

    ImagePlane out(out_w, out_h, img.channels);
    for (int r = 0; r < out_h; ++r) {
        const Tap& ty = ys[static_cast<std::size_t>(r)];
        for (int c = 0; c < out_w; ++c) {
            const Tap& tx = xs[static_cast<std::size_t>(c)];
            for (int ch = 0; ch < img.channels; ++ch) {
                const double a = img.at(ty.i0, tx.i0, ch);
                const double b = img.at(ty.i0, tx.i1, ch);
                const double d = img.at(ty.i1, tx.i0, ch);
                const double e = img.at(ty.i1, tx.i1, ch);
                const double top_row = a + (b - a) * tx.w1;
                const double bottom_row = d + (e - d) * tx.w1;
                out.at(r, c, ch) = top_row + (bottom_row - top_row) * ty.w1;
            }
        }
    }
    return out;
}

ImagePlane resize_bilinear(const ImagePlane& patch, int out_w, int out_h)
{
    const Rect full{patch.width / 2.0, patch.height / 2.0,
        static_cast<double>(patch.width), static_cast<double>(patch.height)};
    return sample_patch(patch, full, out_w, out_h);
}

FeatureStack apply_window(const FeatureStack& feat, const CosineWindow& win)
{
    if (feat.width != win.width || feat.height != win.height) {
        throw Error(ErrorCode::DimensionMismatch,
            "feature grid " + std::to_string(feat.width) + "x" + std::to_string(feat.height)
                + " vs window " + std::to_string(win.width) + "x" + std::to_string(win.height));
    }
    FeatureStack out = feat;
    for (auto& ch : out.channels) {
        for (std::size_t i = 0; i < ch.size(); ++i) {
            ch.data[i] *= win.weights.data[i];
        }
    }
    return out;
}

}  // namespace situp
