#include "situp/tracker.hpp"

#include "situp/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace situp {

void TrackerConfig::validate() const
{
    if (!(lambda > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "lambda must be positive");
    }
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "theta must lie in [0, 1]");
    }
    if (!(padding >= 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "padding must be nonnegative");
    }
    if (!(sigma_factor > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "sigma_factor must be positive");
    }
    if (features.cell < 1) {
        throw Error(ErrorCode::InvalidConfig, "cell must be positive");
    }
    if (template_cap < 4 * features.cell) {
        throw Error(ErrorCode::InvalidConfig, "template_cap must hold at least 4 cells");
    }
    if (!features.hog && !features.gray && !features.color_names) {
        throw Error(ErrorCode::InvalidConfig, "no feature enabled");
    }
}

std::pair<int, int> template_size(double window_w, double window_h, int cap, int cell)
{
    const double longest = std::max(window_w, window_h);
    const double shrink = longest > cap ? cap / longest : 1.0;
    auto snap = [&](double v) {
        const int px = static_cast<int>(std::lround(v * shrink));
        return std::max(2 * cell, px / cell * cell);
    };
    return {snap(window_w), snap(window_h)};
}

Tracker::Tracker(TrackerConfig cfg, std::shared_ptr<const ColorNameTable> color_names)
    : cfg_(std::move(cfg)), color_names_(std::move(color_names))
{
    cfg_.validate();
}

void Tracker::init(const ImagePlane& frame, const Rect& box)
{
    if (frame.empty()) {
        throw Error(ErrorCode::DegenerateBox, "empty initial frame");
    }
    if (!(box.w >= 2.0 && box.h >= 2.0)) {
        throw Error(ErrorCode::DegenerateBox, "initial box must be at least 2x2 pixels");
    }
    const bool intersects = box.left() < frame.width && box.left() + box.w > 0.0 && box.top() < frame.height
        && box.top() + box.h > 0.0;
    if (!intersects) {
        throw Error(ErrorCode::DegenerateBox, "initial box does not intersect the frame");
    }

    const double grow = 1.0 + cfg_.padding;
    state_ = TrackState{};
    state_.cx = box.cx;
    state_.cy = box.cy;
    state_.target_w = box.w;
    state_.target_h = box.h;
    state_.window_w = box.w * grow;
    state_.window_h = box.h * grow;
    const auto [tw, th] = template_size(state_.window_w, state_.window_h, cfg_.template_cap, cfg_.features.cell);
    state_.template_w = tw;
    state_.template_h = th;
    state_.frame_index = 0;

    encoder_ = std::make_unique<PatchEncoder>(cfg_.features, color_names_, tw, th);

    const int cell = cfg_.features.cell;
    const double target_cells_w = box.w * (tw / state_.window_w) / cell;
    const double target_cells_h = box.h * (th / state_.window_h) / cell;
    const double sigma = cfg_.sigma_factor * std::sqrt(target_cells_w * target_cells_h);
    labels_ = gaussian_labels(encoder_->grid_width(), encoder_->grid_height(), sigma);

    model_ = train(encoder_->encode(frame, state_.window()), labels_, cfg_.lambda, cfg_.theta);
}

StepResult Tracker::step(const ImagePlane& frame)
{
    if (!model_) {
        throw Error(ErrorCode::InvalidConfig, "step() before init()");
    }
    const int cell = cfg_.features.cell;
    const int gw = encoder_->grid_width();
    const int gh = encoder_->grid_height();
    auto move_center = [&](const ResponseMap& response, const Rect& sampled) {
        const Displacement d = decode_displacement(response.peak_pos, gw, gh);
        state_.cx += d.dx * cell * (sampled.w / state_.template_w);
        state_.cy += d.dy * cell * (sampled.h / state_.template_h);
    };

    if (cfg_.two_pass) {
        const Rect unit = state_.window();
        move_center(detect(*model_, encoder_->encode(frame, unit)), unit);
    }

    const ScaleDecision decision = select_scale(*model_, frame, state_, cfg_.pool, *encoder_, cfg_.criterion);
    move_center(decision.response, decision.sampled_window);
    state_.window_w *= decision.applied_factor;
    state_.window_h *= decision.applied_factor;
    state_.target_w *= decision.applied_factor;
    state_.target_h *= decision.applied_factor;
    ++state_.frame_index;

    model_ = update(*model_, encoder_->encode(frame, state_.window()), labels_);

    StepResult result;
    result.box = state_.target();
    auto& diag = result.diagnostics;
    diag.frame_index = state_.frame_index;
    diag.per_scale_apce = decision.per_scale_apce;
    diag.per_scale_peak = decision.per_scale_peak;
    diag.chosen_factor = decision.chosen_factor;
    diag.applied_factor = decision.applied_factor;
    diag.chosen_index = decision.chosen_index;
    diag.peak_value = decision.response.peak_value;
    diag.apce = decision.response.apce;
    diag.no_confidence = decision.no_confidence;
    return result;
}

FrameSource memory_frames(std::shared_ptr<const std::vector<ImagePlane>> frames)
{
    FrameSource source;
    source.count = frames->size();
    source.load = [frames = std::move(frames)](std::size_t i) { return (*frames)[i]; };
    return source;
}

SequenceRun run_sequence(const FrameSource& frames, const Rect& init_box, const TrackerConfig& cfg,
    std::shared_ptr<const ColorNameTable> color_names)
{
    SequenceRun run;
    if (frames.count == 0) {
        throw Error(ErrorCode::EmptyTrajectory, "sequence has no frames");
    }
    Tracker tracker(cfg, std::move(color_names));
    try {
        tracker.init(frames.load(0), init_box);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::FrameDecode) {
            throw;
        }
        run.partial = true;
        run.error = e.what();
        return run;
    }
    run.boxes.push_back(init_box);
    using Clock = std::chrono::steady_clock;
    for (std::size_t i = 1; i < frames.count; ++i) {
        ImagePlane frame;
        try {
            frame = frames.load(i);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::FrameDecode) {
                throw;
            }
            run.partial = true;
            run.error = e.what();
            break;
        }
        const auto start = Clock::now();
        StepResult result = tracker.step(frame);
        run.step_seconds += std::chrono::duration<double>(Clock::now() - start).count();
        run.boxes.push_back(result.box);
        run.diagnostics.push_back(std::move(result.diagnostics));
    }
    return run;
}

}  // namespace situp
