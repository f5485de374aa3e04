#pragma once

#include "situp/spectral.hpp"

#include <vector>

namespace situp {

// Multi-channel feature representation of a patch; every channel shares the
// same spatial grid.
struct FeatureStack {
    int width = 0;
    int height = 0;
    std::vector<RealGrid> channels;

    FeatureStack() = default;
    FeatureStack(int w, int h, int count) : width(w), height(h), channels(count, RealGrid(w, h)) {}

    int channel_count() const noexcept { return static_cast<int>(channels.size()); }

    // Appends all channels of other; throws DimensionMismatch on grid mismatch.
    void append(const FeatureStack& other);
};

using SpectralStack = std::vector<SpectralGrid>;

SpectralStack to_spectral(const FeatureStack& features);

}  // namespace situp
