#pragma once

// Hand-crafted features for the correlation filter: 31-channel HoG, 11-channel
// color names and a normalized grayscale channel, all on the HoG cell grid.

#include "situp/feature_stack.hpp"
#include "situp/imageproc.hpp"

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace situp {

inline constexpr int kHogChannels = 31;
inline constexpr int kColorNameChannels = 11;
inline constexpr int kColorNameBins = 32 * 32 * 32;

// RGB -> 11 color-name probabilities, indexed by the top five bits of each
// channel: row = (r >> 3) * 1024 + (g >> 3) * 32 + (b >> 3).
// Column order: black, blue, brown, grey, green, orange, pink, purple, red,
// white, yellow.
//
// File formats accepted by load():
//   *.bin                 raw little-endian float32, 32768 x 11, row-major
//   *.csv / *.txt / other text with 32768 rows of 11 values, or 14 values
//                         where the first three are the RGB bin coordinates
//                         (the layout of the published w2c.txt)
class ColorNameTable {
public:
    using Row = std::array<double, kColorNameChannels>;

    explicit ColorNameTable(std::vector<Row> rows);

    static ColorNameTable load(const std::filesystem::path& path);

    // Soft assignment of every RGB bin to 11 basic-color prototypes in CIELab.
    static ColorNameTable prototypes();

    void save_binary(const std::filesystem::path& path) const;

    static int index(int r, int g, int b) noexcept { return ((r >> 3) << 10) | ((g >> 3) << 5) | (b >> 3); }
    const Row& row(int idx) const { return rows_[static_cast<std::size_t>(idx)]; }
    const Row& lookup(int r, int g, int b) const { return rows_[static_cast<std::size_t>(index(r, g, b))]; }

private:
    std::vector<Row> rows_;
};

// Table resolution order: SITUP_CN_TABLE, the table generated next to the
// build, the installed copy. Returns nullptr (with a warning on stderr) when
// none can be read; callers then fall back to HoG + gray.
std::shared_ptr<const ColorNameTable> load_default_color_names();

struct FeatureConfig {
    int cell = 4;
    bool hog = true;
    bool color_names = true;
    bool gray = true;
};

FeatureStack hog31(const ImagePlane& patch, int cell);
FeatureStack color_names(const ImagePlane& patch, const ColorNameTable& table, int cell);
FeatureStack gray_feature(const ImagePlane& patch, int cell);

// [HoG31 | CN11 | gray1]; CN is skipped for single-channel patches or when no
// table is given.
FeatureStack build_stack(const ImagePlane& patch, const FeatureConfig& cfg, const ColorNameTable* table);

int expected_channels(const FeatureConfig& cfg, bool color_frame, bool have_table);

// Samples a search window, resizes it to the template and returns the
// cosine-windowed feature stack.
class PatchEncoder {
public:
    PatchEncoder(FeatureConfig cfg, std::shared_ptr<const ColorNameTable> table, int template_w, int template_h);

    FeatureStack encode(const ImagePlane& frame, const Rect& window) const;

    int template_width() const noexcept { return template_w_; }
    int template_height() const noexcept { return template_h_; }
    int grid_width() const noexcept { return window_.width; }
    int grid_height() const noexcept { return window_.height; }
    const FeatureConfig& config() const noexcept { return cfg_; }

private:
    FeatureConfig cfg_;
    std::shared_ptr<const ColorNameTable> table_;
    int template_w_;
    int template_h_;
    CosineWindow window_;
};

}  // namespace situp
