#pragma once

// Exhaustive multi-resolution scale search: every factor of the pool samples
// a window around the previous center, the responses are scored and the best
// scoring map supplies both the new scale and the translation.

#include "situp/dcf.hpp"
#include "situp/features.hpp"
#include "situp/imageproc.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace situp {

struct TrackState {
    double cx = 0.0;
    double cy = 0.0;
    double window_w = 0.0;  // search window, pixels
    double window_h = 0.0;
    double target_w = 0.0;  // reported box, pixels
    double target_h = 0.0;
    int template_w = 0;  // fixed resampling size, pixels
    int template_h = 0;
    int frame_index = 0;

    Rect window() const noexcept { return {cx, cy, window_w, window_h}; }
    Rect target() const noexcept { return {cx, cy, target_w, target_h}; }
};

class ScalePool {
public:
    // Throws InvalidConfig unless factors are strictly increasing, lie in
    // (0.5, 2.0) and include 1.0.
    explicit ScalePool(std::vector<double> factors);

    static ScalePool standard();
    static ScalePool singleton();

    const std::vector<double>& factors() const noexcept { return factors_; }
    std::size_t size() const noexcept { return factors_.size(); }
    double operator[](std::size_t i) const { return factors_[i]; }
    std::size_t unit_index() const noexcept { return unit_index_; }

private:
    std::vector<double> factors_;
    std::size_t unit_index_ = 0;
};

enum class ScaleCriterion { Apce, MaxResponse };

std::string_view to_string(ScaleCriterion c);
ScaleCriterion parse_criterion(std::string_view text);

struct ScaleDecision {
    double chosen_factor = 1.0;
    std::size_t chosen_index = 0;
    double applied_factor = 1.0;  // after the window clamp
    std::vector<double> per_scale_apce;
    std::vector<double> per_scale_peak;
    ResponseMap response;
    Rect sampled_window;  // window the chosen response was computed on
    bool no_confidence = false;
};

// Smallest and largest admissible search window: 8 px per side, 4x the frame.
double clamp_window_factor(double window_w, double window_h, int frame_w, int frame_h);

// Index of the best score; ties go to the factor closest to 1.0, then to the
// lower index.
std::size_t argmax_score(const std::vector<double>& scores, const ScalePool& pool);

ScaleDecision select_scale(const TrackerModel& model, const ImagePlane& frame, const TrackState& state,
    const ScalePool& pool, const PatchEncoder& encoder, ScaleCriterion criterion = ScaleCriterion::Apce);

}  // namespace situp
