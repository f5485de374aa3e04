#pragma once

// OTB-format sequences and deterministic synthetic sequences.
//
// On-disk layout:
//   <seq>/img/0001.jpg ...        frames, sorted by the numeric file stem
//   <seq>/groundtruth_rect.txt    one "x,y,w,h" row per frame (comma, tab or
//                                 space separated), 1-indexed corner form
//   <seq>/attrs.txt               optional, comma-separated attribute tags

#include "situp/imageproc.hpp"
#include "situp/tracker.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace situp {

// 1-indexed corner box as stored in OTB ground truth.
struct Box {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;
    bool operator==(const Box&) const = default;
};

Rect to_rect(const Box& b) noexcept;
Box to_box(const Rect& r) noexcept;

inline constexpr std::array<std::string_view, 11> kAttributeTags = {
    "IV", "OPR", "SV", "OCC", "DEF", "MB", "FM", "IPR", "OV", "BC", "LR"};

bool is_attribute_tag(std::string_view tag) noexcept;

struct Sequence {
    std::string name;
    std::vector<std::filesystem::path> frame_files;
    std::shared_ptr<const std::vector<ImagePlane>> frames;  // set for in-memory sequences
    std::vector<Box> groundtruth;
    std::vector<std::string> attributes;

    std::size_t frame_count() const noexcept { return frames ? frames->size() : frame_files.size(); }
    bool has_attribute(std::string_view tag) const;
    FrameSource source() const;
};

Sequence load_otb(const std::filesystem::path& dir);

// Writes frames as PNG plus groundtruth_rect.txt and attrs.txt. Boxes are
// written with round-trip precision.
void write_otb(const Sequence& seq, const std::filesystem::path& dir);

std::vector<Box> parse_groundtruth(std::string_view text);
std::string format_groundtruth(const std::vector<Box>& boxes);
std::vector<std::string> parse_attributes(std::string_view text);

// Opaque rectangle in continuous pixel coordinates (corner form, 0-based).
struct Occluder {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;
};

struct SynthSpec {
    std::string name = "synthetic";
    int width = 480;
    int height = 360;
    std::uint64_t seed = 1;
    double target_w = 40.0;  // size at scale 1
    double target_h = 40.0;
    std::vector<double> cx;  // per-frame center, continuous pixel coordinates
    std::vector<double> cy;
    std::vector<double> scale;  // per-frame multiplier of the target size
    std::vector<int> blur_radius;  // per frame, 0 = none
    std::vector<std::optional<Occluder>> occluder;  // per frame
    bool out_of_view = false;
    std::vector<std::string> attributes;

    std::size_t frame_count() const noexcept { return cx.size(); }
    Rect target_at(std::size_t frame) const;
};

// Key-value text:
//   name, width, height, frames, seed, target_w, target_h,
//   start_cx, start_cy, velocity_x, velocity_y (pixels per frame),
//   scale_rate (per-frame multiplicative growth), out_of_view, attributes,
//   blur = first:last:radius            (repeatable, 1-based inclusive frames)
//   occlude = first:last:x:y:w:h        (repeatable)
// start_cx/start_cy default to the frame center.
SynthSpec parse_synth_spec(std::string_view text);
SynthSpec load_synth_spec(const std::filesystem::path& path);

struct SynthOutput {
    Sequence sequence;  // in-memory frames, exact ground truth
    std::vector<RealGrid> coverage;  // per frame, fraction of each pixel covered by the target
};

// Throws SpecOutOfFrame when less than half the target is visible in some
// frame and the spec does not declare an out-of-view phase.
SynthOutput synth_sequence(const SynthSpec& spec);

}  // namespace situp
