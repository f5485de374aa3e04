#include "situp/features.hpp"

#include "situp/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace situp {

namespace {

constexpr int kOrientations = 18;
constexpr double kTruncation = 0.2;
constexpr double kNormEps = 1e-4;
// 1 / sqrt(18): texture channels weight the 18 truncated orientations equally.
constexpr double kTextureWeight = 0.2357;

struct Directions {
    std::array<double, kOrientations / 2> u{};
    std::array<double, kOrientations / 2> v{};
    Directions()
    {
        for (int o = 0; o < kOrientations / 2; ++o) {
            const double angle = o * std::numbers::pi / (kOrientations / 2);
            u[static_cast<std::size_t>(o)] = std::cos(angle);
            v[static_cast<std::size_t>(o)] = std::sin(angle);
        }
    }
};

const Directions& directions()
{
    static const Directions dirs;
    return dirs;
}

double luminance(const ImagePlane& img, int r, int c)
{
    if (img.channels == 1) {
        return img.at(r, c, 0);
    }
    return 0.299 * img.at(r, c, 0) + 0.587 * img.at(r, c, 1) + 0.114 * img.at(r, c, 2);
}

void require_cell(int cell)
{
    if (cell < 1) {
        throw Error(ErrorCode::InvalidConfig, "cell size must be positive");
    }
}

}  // namespace

FeatureStack hog31(const ImagePlane& patch, int cell)
{
    require_cell(cell);
    if (patch.width < 2 * cell || patch.height < 2 * cell) {
        throw Error(ErrorCode::PatchTooSmall,
            "HoG needs at least 2x2 cells, patch is " + std::to_string(patch.width) + "x" + std::to_string(patch.height));
    }
    const int cw = patch.width / cell;
    const int ch = patch.height / cell;
    const int used_w = cw * cell;
    const int used_h = ch * cell;
    const Directions& dirs = directions();

    std::vector<double> hist(static_cast<std::size_t>(cw) * ch * kOrientations, 0.0);
    auto bin = [&](int cy, int cx, int o) -> double& {
        return hist[(static_cast<std::size_t>(cy) * cw + cx) * kOrientations + o];
    };

    for (int y = 0; y < used_h; ++y) {
        const int yu = std::max(y - 1, 0);
        const int yd = std::min(y + 1, patch.height - 1);
        for (int x = 0; x < used_w; ++x) {
            const int xl = std::max(x - 1, 0);
            const int xr = std::min(x + 1, patch.width - 1);

            // Per pixel, keep the channel with the strongest gradient.
            double dx = 0.0;
            double dy = 0.0;
            double mag2 = -1.0;
            for (int k = 0; k < patch.channels; ++k) {
                const double gx = patch.at(y, xr, k) - patch.at(y, xl, k);
                const double gy = patch.at(yd, x, k) - patch.at(yu, x, k);
                const double m2 = gx * gx + gy * gy;
                if (m2 > mag2) {
                    mag2 = m2;
                    dx = gx;
                    dy = gy;
                }
            }
            if (mag2 <= 0.0) {
                continue;
            }
            const double mag = std::sqrt(mag2);

            // Snap to the nearest of 18 directions (first one wins ties).
            double best_dot = 0.0;
            int best_o = 0;
            for (int o = 0; o < kOrientations / 2; ++o) {
                const double dot = dirs.u[static_cast<std::size_t>(o)] * dx + dirs.v[static_cast<std::size_t>(o)] * dy;
                if (dot > best_dot) {
                    best_dot = dot;
                    best_o = o;
                } else if (-dot > best_dot) {
                    best_dot = -dot;
                    best_o = o + kOrientations / 2;
                }
            }

            // Bilinear vote into the four surrounding cells.
            const double xp = (x + 0.5) / cell - 0.5;
            const double yp = (y + 0.5) / cell - 0.5;
            const int ixp = static_cast<int>(std::floor(xp));
            const int iyp = static_cast<int>(std::floor(yp));
            const double vx0 = xp - ixp;
            const double vy0 = yp - iyp;
            const double vx1 = 1.0 - vx0;
            const double vy1 = 1.0 - vy0;
            if (iyp >= 0 && ixp >= 0) {
                bin(iyp, ixp, best_o) += vy1 * vx1 * mag;
            }
            if (iyp >= 0 && ixp + 1 < cw) {
                bin(iyp, ixp + 1, best_o) += vy1 * vx0 * mag;
            }
            if (iyp + 1 < ch && ixp >= 0) {
                bin(iyp + 1, ixp, best_o) += vy0 * vx1 * mag;
            }
            if (iyp + 1 < ch && ixp + 1 < cw) {
                bin(iyp + 1, ixp + 1, best_o) += vy0 * vx0 * mag;
            }
        }
    }

    // Gradient energy per cell from the contrast-insensitive histogram.
    std::vector<double> energy(static_cast<std::size_t>(cw) * ch, 0.0);
    for (int cy = 0; cy < ch; ++cy) {
        for (int cx = 0; cx < cw; ++cx) {
            double e = 0.0;
            for (int o = 0; o < kOrientations / 2; ++o) {
                const double s = bin(cy, cx, o) + bin(cy, cx, o + kOrientations / 2);
                e += s * s;
            }
            energy[static_cast<std::size_t>(cy) * cw + cx] = e;
        }
    }
    auto energy_at = [&](int cy, int cx) {
        cy = std::clamp(cy, 0, ch - 1);
        cx = std::clamp(cx, 0, cw - 1);
        return energy[static_cast<std::size_t>(cy) * cw + cx];
    };

    FeatureStack out(cw, ch, kHogChannels);
    static constexpr int kBlocks[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (int cy = 0; cy < ch; ++cy) {
        for (int cx = 0; cx < cw; ++cx) {
            std::array<double, 4> norm{};
            for (std::size_t k = 0; k < 4; ++k) {
                const int sy = kBlocks[k][0];
                const int sx = kBlocks[k][1];
                const double e = energy_at(cy, cx) + energy_at(cy, cx + sx) + energy_at(cy + sy, cx)
                    + energy_at(cy + sy, cx + sx);
                norm[k] = 1.0 / std::sqrt(e + kNormEps);
            }

            std::array<double, 4> texture{};
            for (int o = 0; o < kOrientations; ++o) {
                const double h = bin(cy, cx, o);
                double sum = 0.0;
                for (std::size_t k = 0; k < 4; ++k) {
                    const double v = std::min(h * norm[k], kTruncation);
                    sum += v;
                    texture[k] += v;
                }
                out.channels[static_cast<std::size_t>(o)].at(cy, cx) = 0.5 * sum;
            }
            for (int o = 0; o < kOrientations / 2; ++o) {
                const double h = bin(cy, cx, o) + bin(cy, cx, o + kOrientations / 2);
                double sum = 0.0;
                for (std::size_t k = 0; k < 4; ++k) {
                    sum += std::min(h * norm[k], kTruncation);
                }
                out.channels[static_cast<std::size_t>(kOrientations + o)].at(cy, cx) = 0.5 * sum;
            }
            for (std::size_t k = 0; k < 4; ++k) {
                out.channels[static_cast<std::size_t>(kOrientations + kOrientations / 2) + k].at(cy, cx)
                    = kTextureWeight * texture[k];
            }
        }
    }
    return out;
}

FeatureStack color_names(const ImagePlane& patch, const ColorNameTable& table, int cell)
{
    require_cell(cell);
    if (patch.channels != 3) {
        throw Error(ErrorCode::GrayscaleInput, "color names need an RGB patch");
    }
    const int cw = patch.width / cell;
    const int ch = patch.height / cell;
    if (cw < 1 || ch < 1) {
        throw Error(ErrorCode::PatchTooSmall, "patch smaller than one cell");
    }
    FeatureStack out(cw, ch, kColorNameChannels);
    const double inv_area = 1.0 / (static_cast<double>(cell) * cell);
    auto quantize = [](double v) { return std::clamp(static_cast<int>(std::lround(v)), 0, 255); };
    for (int cy = 0; cy < ch; ++cy) {
        for (int cx = 0; cx < cw; ++cx) {
            std::array<double, kColorNameChannels> acc{};
            for (int y = cy * cell; y < (cy + 1) * cell; ++y) {
                for (int x = cx * cell; x < (cx + 1) * cell; ++x) {
                    const auto& row = table.lookup(quantize(patch.at(y, x, 0)), quantize(patch.at(y, x, 1)),
                        quantize(patch.at(y, x, 2)));
                    for (std::size_t k = 0; k < acc.size(); ++k) {
                        acc[k] += row[k];
                    }
                }
            }
            for (std::size_t k = 0; k < acc.size(); ++k) {
                out.channels[k].at(cy, cx) = acc[k] * inv_area;
            }
        }
    }
    return out;
}

FeatureStack gray_feature(const ImagePlane& patch, int cell)
{
    require_cell(cell);
    const int cw = patch.width / cell;
    const int ch = patch.height / cell;
    if (cw < 1 || ch < 1) {
        throw Error(ErrorCode::PatchTooSmall, "patch smaller than one cell");
    }
    FeatureStack out(cw, ch, 1);
    const double inv_area = 1.0 / (static_cast<double>(cell) * cell);
    for (int cy = 0; cy < ch; ++cy) {
        for (int cx = 0; cx < cw; ++cx) {
            double acc = 0.0;
            for (int y = cy * cell; y < (cy + 1) * cell; ++y) {
                for (int x = cx * cell; x < (cx + 1) * cell; ++x) {
                    acc += luminance(patch, y, x) / 255.0 - 0.5;
                }
            }
            out.channels[0].at(cy, cx) = acc * inv_area;
        }
    }
    return out;
}

int expected_channels(const FeatureConfig& cfg, bool color_frame, bool have_table)
{
    return (cfg.hog ? kHogChannels : 0) + (cfg.color_names && color_frame && have_table ? kColorNameChannels : 0)
        + (cfg.gray ? 1 : 0);
}

FeatureStack build_stack(const ImagePlane& patch, const FeatureConfig& cfg, const ColorNameTable* table)
{
    if (!cfg.hog && !cfg.gray && !(cfg.color_names && table != nullptr && patch.channels == 3)) {
        throw Error(ErrorCode::InvalidConfig, "no feature enabled");
    }
    FeatureStack out;
    if (cfg.hog) {
        out.append(hog31(patch, cfg.cell));
    }
    if (cfg.color_names && table != nullptr && patch.channels == 3) {
        out.append(color_names(patch, *table, cfg.cell));
    }
    if (cfg.gray) {
        out.append(gray_feature(patch, cfg.cell));
    }
    return out;
}

PatchEncoder::PatchEncoder(FeatureConfig cfg, std::shared_ptr<const ColorNameTable> table, int template_w, int template_h)
    : cfg_(cfg), table_(std::move(table)), template_w_(template_w), template_h_(template_h),
      window_(make_cosine_window(template_w / cfg.cell, template_h / cfg.cell))
{
}

FeatureStack PatchEncoder::encode(const ImagePlane& frame, const Rect& window) const
{
    const ImagePlane patch = sample_patch(frame, window, template_w_, template_h_);
    return apply_window(build_stack(patch, cfg_, table_.get()), window_);
}

}  // namespace situp
