#pragma once

// Pixel-level helpers: frames, patch sampling, resampling and the Hann taper.
//
// Continuous image coordinates put the center of pixel (r, c) at
// (c + 0.5, r + 0.5); a Rect centered at (W/2, H/2) with extent (W, H) covers
// the whole frame.

#include "situp/feature_stack.hpp"

#include <cstddef>
#include <vector>

namespace situp {

struct ImagePlane {
    int width = 0;
    int height = 0;
    int channels = 1;  // 1 (gray) or 3 (RGB)
    std::vector<double> data;  // interleaved, data[(row * width + col) * channels + ch], in [0, 255]

    ImagePlane() = default;
    ImagePlane(int w, int h, int ch, double fill = 0.0);

    double& at(int row, int col, int ch = 0)
    {
        return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
    }
    double at(int row, int col, int ch = 0) const
    {
        return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
    }
    bool empty() const noexcept { return data.empty(); }
};

// Target geometry in center form.
struct Rect {
    double cx = 0.0;
    double cy = 0.0;
    double w = 0.0;
    double h = 0.0;

    double left() const noexcept { return cx - w / 2.0; }
    double top() const noexcept { return cy - h / 2.0; }
    double area() const noexcept { return w * h; }
};

struct CosineWindow {
    int width = 0;
    int height = 0;
    RealGrid weights;
};

CosineWindow make_cosine_window(int width, int height);

// Pixel-aligned crop of the rounded region size, edges replicated.
ImagePlane extract_patch(const ImagePlane& img, const Rect& region);

// Bilinear resampling, pixel-grid corners aligned (half-pixel mapping),
// clamp-to-edge.
ImagePlane resize_bilinear(const ImagePlane& patch, int out_w, int out_h);

// Samples region directly into an out_w x out_h patch: output sample i maps to
// source coordinate left + (i + 0.5) * (w / out_w), bilinear, clamp-to-edge.
ImagePlane sample_patch(const ImagePlane& img, const Rect& region, int out_w, int out_h);

FeatureStack apply_window(const FeatureStack& feat, const CosineWindow& win);

}  // namespace situp
