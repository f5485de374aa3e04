#include "situp/dataset.hpp"

#include "situp/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace situp {

namespace {

// Fixed mapping from the engine's raw output so textures do not depend on the
// standard library's distribution implementations.
class Noise {
public:
    explicit Noise(std::uint64_t seed) : state_(seed) {}

    double uniform()
    {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Random values on a coarse lattice, bilinearly upsampled.
ImagePlane lattice_texture(int width, int height, int spacing, Noise& noise, double lo, double hi, bool colored)
{
    const int lw = width / spacing + 2;
    const int lh = height / spacing + 2;
    ImagePlane lattice(lw, lh, 3);
    for (int r = 0; r < lh; ++r) {
        for (int c = 0; c < lw; ++c) {
            const double base = lo + (hi - lo) * noise.uniform();
            for (int k = 0; k < 3; ++k) {
                lattice.at(r, c, k) = colored ? lo + (hi - lo) * noise.uniform() : base;
            }
        }
    }
    const Rect region{(width / static_cast<double>(spacing)) / 2.0 + 0.5, (height / static_cast<double>(spacing)) / 2.0 + 0.5,
        width / static_cast<double>(spacing), height / static_cast<double>(spacing)};
    return sample_patch(lattice, region, width, height);
}

void box_blur(ImagePlane& img, int radius)
{
    if (radius <= 0) {
        return;
    }
    const double norm = 1.0 / (2 * radius + 1);
    ImagePlane tmp(img.width, img.height, img.channels);
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            for (int k = 0; k < img.channels; ++k) {
                double acc = 0.0;
                for (int d = -radius; d <= radius; ++d) {
                    acc += img.at(r, std::clamp(c + d, 0, img.width - 1), k);
                }
                tmp.at(r, c, k) = acc * norm;
            }
        }
    }
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            for (int k = 0; k < img.channels; ++k) {
                double acc = 0.0;
                for (int d = -radius; d <= radius; ++d) {
                    acc += tmp.at(std::clamp(r + d, 0, img.height - 1), c, k);
                }
                img.at(r, c, k) = acc * norm;
            }
        }
    }
}

double overlap_1d(double a0, double a1, double b0, double b1) { return std::max(0.0, std::min(a1, b1) - std::max(a0, b0)); }

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

std::vector<double> colon_numbers(std::string_view text, std::size_t expected, std::string_view key)
{
    std::vector<double> out;
    while (true) {
        const auto pos = text.find(':');
        const std::string_view item = trim(text.substr(0, pos));
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size()) {
            throw Error(ErrorCode::InvalidConfig, "bad value in " + std::string(key));
        }
        out.push_back(v);
        if (pos == std::string_view::npos) {
            break;
        }
        text.remove_prefix(pos + 1);
    }
    if (out.size() != expected) {
        throw Error(ErrorCode::InvalidConfig, std::string(key) + " expects " + std::to_string(expected) + " fields");
    }
    return out;
}

double number(std::string_view text, std::string_view key)
{
    return colon_numbers(text, 1, key)[0];
}

}  // namespace

Rect SynthSpec::target_at(std::size_t frame) const
{
    return {cx[frame], cy[frame], target_w * scale[frame], target_h * scale[frame]};
}

SynthSpec parse_synth_spec(std::string_view text)
{
    SynthSpec spec;
    int frames = 0;
    double start_cx = -1.0;
    double start_cy = -1.0;
    bool have_cx = false;
    bool have_cy = false;
    double vx = 0.0;
    double vy = 0.0;
    double rate = 1.0;
    struct Blur {
        int first, last, radius;
    };
    struct Occ {
        int first, last;
        Occluder rect;
    };
    std::vector<Blur> blurs;
    std::vector<Occ> occs;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::InvalidConfig, "synth spec line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key == "name") {
            spec.name = std::string(value);
        } else if (key == "width") {
            spec.width = static_cast<int>(number(value, key));
        } else if (key == "height") {
            spec.height = static_cast<int>(number(value, key));
        } else if (key == "frames") {
            frames = static_cast<int>(number(value, key));
        } else if (key == "seed") {
            spec.seed = static_cast<std::uint64_t>(number(value, key));
        } else if (key == "target_w") {
            spec.target_w = number(value, key);
        } else if (key == "target_h") {
            spec.target_h = number(value, key);
        } else if (key == "start_cx") {
            start_cx = number(value, key);
            have_cx = true;
        } else if (key == "start_cy") {
            start_cy = number(value, key);
            have_cy = true;
        } else if (key == "velocity_x") {
            vx = number(value, key);
        } else if (key == "velocity_y") {
            vy = number(value, key);
        } else if (key == "scale_rate") {
            rate = number(value, key);
        } else if (key == "out_of_view") {
            spec.out_of_view = value == "true" || value == "1";
        } else if (key == "attributes") {
            spec.attributes = parse_attributes(value);
        } else if (key == "blur") {
            const auto v = colon_numbers(value, 3, key);
            blurs.push_back({static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])});
        } else if (key == "occlude") {
            const auto v = colon_numbers(value, 6, key);
            occs.push_back({static_cast<int>(v[0]), static_cast<int>(v[1]), {v[2], v[3], v[4], v[5]}});
        } else {
            throw Error(ErrorCode::InvalidConfig, "unknown synth spec key '" + std::string(key) + "'");
        }
    }
    if (frames < 1 || spec.width < 16 || spec.height < 16 || !(spec.target_w > 0.0) || !(spec.target_h > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "synth spec needs frames >= 1, a frame of at least 16x16 and a positive target");
    }
    if (!have_cx) {
        start_cx = spec.width / 2.0;
    }
    if (!have_cy) {
        start_cy = spec.height / 2.0;
    }
    const auto n = static_cast<std::size_t>(frames);
    spec.cx.resize(n);
    spec.cy.resize(n);
    spec.scale.resize(n);
    spec.blur_radius.assign(n, 0);
    spec.occluder.assign(n, std::nullopt);
    for (std::size_t j = 0; j < n; ++j) {
        spec.cx[j] = start_cx + vx * static_cast<double>(j);
        spec.cy[j] = start_cy + vy * static_cast<double>(j);
        spec.scale[j] = std::pow(rate, static_cast<double>(j));
    }
    for (const auto& b : blurs) {
        for (int f = std::max(b.first, 1); f <= std::min(b.last, frames); ++f) {
            spec.blur_radius[static_cast<std::size_t>(f - 1)] = b.radius;
        }
    }
    for (const auto& o : occs) {
        for (int f = std::max(o.first, 1); f <= std::min(o.last, frames); ++f) {
            spec.occluder[static_cast<std::size_t>(f - 1)] = o.rect;
        }
    }
    return spec;
}

SynthSpec load_synth_spec(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open synth spec " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_synth_spec(buf.str());
}

SynthOutput synth_sequence(const SynthSpec& spec)
{
    const std::size_t n = spec.frame_count();
    if (n == 0 || spec.cy.size() != n || spec.scale.size() != n) {
        throw Error(ErrorCode::InvalidConfig, "synth spec trajectories have inconsistent lengths");
    }
    for (std::size_t j = 0; j < n; ++j) {
        const Rect t = spec.target_at(j);
        const double visible = overlap_1d(t.left(), t.left() + t.w, 0.0, spec.width)
            * overlap_1d(t.top(), t.top() + t.h, 0.0, spec.height);
        if (!spec.out_of_view && visible < 0.5 * t.area()) {
            throw Error(ErrorCode::SpecOutOfFrame, "target less than half visible in frame " + std::to_string(j + 1));
        }
    }

    Noise noise(spec.seed);
    const ImagePlane background = lattice_texture(spec.width, spec.height, 24, noise, 70.0, 150.0, false);
    const int tex_w = std::max(2, static_cast<int>(std::lround(spec.target_w)));
    const int tex_h = std::max(2, static_cast<int>(std::lround(spec.target_h)));
    const ImagePlane texture = lattice_texture(tex_w, tex_h, 5, noise, 0.0, 255.0, true);
    const double occluder_shade = 40.0 + 40.0 * noise.uniform();

    SynthOutput output;
    auto frames = std::make_shared<std::vector<ImagePlane>>();
    frames->reserve(n);
    output.sequence.name = spec.name;
    output.sequence.attributes = spec.attributes;

    for (std::size_t j = 0; j < n; ++j) {
        const Rect t = spec.target_at(j);
        ImagePlane frame = background;
        RealGrid coverage(spec.width, spec.height);

        const int c0 = std::max(0, static_cast<int>(std::floor(t.left())));
        const int c1 = std::min(spec.width - 1, static_cast<int>(std::ceil(t.left() + t.w)));
        const int r0 = std::max(0, static_cast<int>(std::floor(t.top())));
        const int r1 = std::min(spec.height - 1, static_cast<int>(std::ceil(t.top() + t.h)));
        for (int r = r0; r <= r1; ++r) {
            const double ay = overlap_1d(r, r + 1.0, t.top(), t.top() + t.h);
            for (int c = c0; c <= c1; ++c) {
                const double alpha = ay * overlap_1d(c, c + 1.0, t.left(), t.left() + t.w);
                if (alpha <= 0.0) {
                    continue;
                }
                coverage.at(r, c) = alpha;
                // Texture coordinate of this pixel's center, clamped into the target.
                const double u = std::clamp((c + 0.5 - t.left()) / t.w, 0.0, 1.0) * tex_w - 0.5;
                const double v = std::clamp((r + 0.5 - t.top()) / t.h, 0.0, 1.0) * tex_h - 0.5;
                const int u0 = std::clamp(static_cast<int>(std::floor(u)), 0, tex_w - 1);
                const int v0 = std::clamp(static_cast<int>(std::floor(v)), 0, tex_h - 1);
                const int u1 = std::min(u0 + 1, tex_w - 1);
                const int v1 = std::min(v0 + 1, tex_h - 1);
                const double fu = std::clamp(u - u0, 0.0, 1.0);
                const double fv = std::clamp(v - v0, 0.0, 1.0);
                for (int k = 0; k < 3; ++k) {
                    const double top = texture.at(v0, u0, k) + (texture.at(v0, u1, k) - texture.at(v0, u0, k)) * fu;
                    const double bottom = texture.at(v1, u0, k) + (texture.at(v1, u1, k) - texture.at(v1, u0, k)) * fu;
                    const double value = top + (bottom - top) * fv;
                    frame.at(r, c, k) = alpha * value + (1.0 - alpha) * frame.at(r, c, k);
                }
            }
        }

        if (const auto& occ = spec.occluder[j]; occ) {
            const int oc0 = std::max(0, static_cast<int>(std::floor(occ->x)));
            const int oc1 = std::min(spec.width - 1, static_cast<int>(std::ceil(occ->x + occ->w)));
            const int or0 = std::max(0, static_cast<int>(std::floor(occ->y)));
            const int or1 = std::min(spec.height - 1, static_cast<int>(std::ceil(occ->y + occ->h)));
            for (int r = or0; r <= or1; ++r) {
                for (int c = oc0; c <= oc1; ++c) {
                    const double alpha = overlap_1d(r, r + 1.0, occ->y, occ->y + occ->h)
                        * overlap_1d(c, c + 1.0, occ->x, occ->x + occ->w);
                    for (int k = 0; k < 3; ++k) {
                        frame.at(r, c, k) = alpha * occluder_shade + (1.0 - alpha) * frame.at(r, c, k);
                    }
                }
            }
        }
        box_blur(frame, spec.blur_radius[j]);

        frames->push_back(std::move(frame));
        output.coverage.push_back(std::move(coverage));
        output.sequence.groundtruth.push_back(to_box(t));
    }
    output.sequence.frames = std::move(frames);
    return output;
}

}  // namespace situp
