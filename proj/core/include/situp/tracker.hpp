#pragma once

#include "situp/dcf.hpp"
#include "situp/features.hpp"
#include "situp/imageproc.hpp"
#include "situp/scale_search.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace situp {

struct TrackerConfig {
    double lambda = 0.0003;
    double theta = 0.004;
    double padding = 1.5;
    double sigma_factor = 0.1;
    ScalePool pool = ScalePool::standard();
    FeatureConfig features{};
    int template_cap = 96;
    ScaleCriterion criterion = ScaleCriterion::Apce;
    // Translate with the unit-scale filter first, then scale-search around
    // the moved center.
    bool two_pass = false;

    void validate() const;
};

// Key-value text: one "key = value" per line, '#' starts a comment. Keys:
// lambda, theta, padding, sigma_factor, cell, pool (comma list), features
// (comma list of hog,cn,gray), template_cap, criterion (apce|maxresp),
// two_pass (true|false). Unknown keys are errors; missing keys keep defaults.
TrackerConfig parse_config(std::string_view text);
TrackerConfig load_config(const std::filesystem::path& path);
std::string format_config(const TrackerConfig& cfg);

std::vector<double> parse_number_list(std::string_view text);

struct FrameDiagnostics {
    int frame_index = 0;
    std::vector<double> per_scale_apce;
    std::vector<double> per_scale_peak;
    double chosen_factor = 1.0;
    double applied_factor = 1.0;
    std::size_t chosen_index = 0;
    double peak_value = 0.0;
    double apce = 0.0;
    bool no_confidence = false;
};

struct StepResult {
    Rect box;
    FrameDiagnostics diagnostics;
};

class Tracker {
public:
    explicit Tracker(TrackerConfig cfg, std::shared_ptr<const ColorNameTable> color_names = nullptr);

    // Throws DegenerateBox when box is smaller than 2 px or misses the frame.
    void init(const ImagePlane& frame, const Rect& box);
    StepResult step(const ImagePlane& frame);

    bool initialized() const noexcept { return model_.has_value(); }
    const TrackState& state() const noexcept { return state_; }
    const TrackerModel& model() const { return *model_; }
    const TrackerConfig& config() const noexcept { return cfg_; }
    int feature_grid_width() const noexcept { return encoder_ ? encoder_->grid_width() : 0; }
    int feature_grid_height() const noexcept { return encoder_ ? encoder_->grid_height() : 0; }
    int channel_count() const { return static_cast<int>(model_->xhat.size()); }
    const GaussianLabels& labels() const noexcept { return labels_; }

private:
    TrackerConfig cfg_;
    std::shared_ptr<const ColorNameTable> color_names_;
    TrackState state_;
    std::unique_ptr<PatchEncoder> encoder_;
    GaussianLabels labels_;
    std::optional<TrackerModel> model_;
};

// Template size for an initial search window: shrunk uniformly so the longest
// side is at most cap, then floored to a multiple of the cell (>= 2 cells).
std::pair<int, int> template_size(double window_w, double window_h, int cap, int cell);

struct FrameSource {
    std::size_t count = 0;
    std::function<ImagePlane(std::size_t)> load;  // throws Error(FrameDecode) on failure
};

FrameSource memory_frames(std::shared_ptr<const std::vector<ImagePlane>> frames);

struct SequenceRun {
    std::vector<Rect> boxes;  // boxes[0] is the initial box
    std::vector<FrameDiagnostics> diagnostics;  // one per step (frames 2..N)
    bool partial = false;
    std::string error;
    double step_seconds = 0.0;

    double fps() const noexcept
    {
        return step_seconds > 0.0 ? static_cast<double>(diagnostics.size()) / step_seconds : 0.0;
    }
};

// One-pass run: init on frame 0, step through the rest, never re-initialize.
// A frame that fails to decode ends the run with partial = true.
SequenceRun run_sequence(const FrameSource& frames, const Rect& init_box, const TrackerConfig& cfg,
    std::shared_ptr<const ColorNameTable> color_names = nullptr);

}  // namespace situp
