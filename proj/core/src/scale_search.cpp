#include "situp/scale_search.hpp"

#include "situp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace situp {

ScalePool::ScalePool(std::vector<double> factors) : factors_(std::move(factors))
{
    if (factors_.empty()) {
        throw Error(ErrorCode::InvalidConfig, "scale pool is empty");
    }
    bool has_unit = false;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const double t = factors_[i];
        if (!(t > 0.5 && t < 2.0)) {
            throw Error(ErrorCode::InvalidConfig, "scale factor " + std::to_string(t) + " outside (0.5, 2.0)");
        }
        if (i > 0 && !(t > factors_[i - 1])) {
            throw Error(ErrorCode::InvalidConfig, "scale pool must be strictly increasing");
        }
        if (t == 1.0) {
            has_unit = true;
            unit_index_ = i;
        }
    }
    if (!has_unit) {
        throw Error(ErrorCode::InvalidConfig, "scale pool must contain 1.0");
    }
}

ScalePool ScalePool::standard()
{
    return ScalePool({0.985, 0.99, 0.995, 1.0, 1.005, 1.01, 1.015});
}

ScalePool ScalePool::singleton() { return ScalePool({1.0}); }

std::string_view to_string(ScaleCriterion c)
{
    return c == ScaleCriterion::Apce ? "apce" : "maxresp";
}

ScaleCriterion parse_criterion(std::string_view text)
{
    if (text == "apce") {
        return ScaleCriterion::Apce;
    }
    if (text == "maxresp") {
        return ScaleCriterion::MaxResponse;
    }
    throw Error(ErrorCode::InvalidConfig, "unknown criterion '" + std::string(text) + "' (apce|maxresp)");
}

double clamp_window_factor(double window_w, double window_h, int frame_w, int frame_h)
{
    constexpr double kMinSide = 8.0;
    constexpr double kMaxFrames = 4.0;
    double f = 1.0;
    const double shortest = std::min(window_w, window_h);
    if (shortest < kMinSide) {
        f = kMinSide / shortest;
    }
    f = std::min(f, kMaxFrames * frame_w / window_w);
    f = std::min(f, kMaxFrames * frame_h / window_h);
    return f;
}

std::size_t argmax_score(const std::vector<double>& scores, const ScalePool& pool)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
        if (scores[i] > scores[best]) {
            best = i;
        } else if (scores[i] == scores[best]
            && std::abs(pool[i] - 1.0) < std::abs(pool[best] - 1.0)) {
            best = i;
        }
    }
    return best;
}

ScaleDecision select_scale(const TrackerModel& model, const ImagePlane& frame, const TrackState& state,
    const ScalePool& pool, const PatchEncoder& encoder, ScaleCriterion criterion)
{
    ScaleDecision decision;
    decision.per_scale_apce.resize(pool.size());
    decision.per_scale_peak.resize(pool.size());
    std::vector<ResponseMap> responses(pool.size());
    std::vector<Rect> windows(pool.size());
    std::vector<double> applied(pool.size());

    bool all_flat = true;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        double w = state.window_w * pool[i];
        double h = state.window_h * pool[i];
        const double clamp = clamp_window_factor(w, h, frame.width, frame.height);
        w *= clamp;
        h *= clamp;
        applied[i] = w / state.window_w;
        windows[i] = Rect{state.cx, state.cy, w, h};
        responses[i] = detect(model, encoder.encode(frame, windows[i]));
        decision.per_scale_apce[i] = responses[i].apce;
        decision.per_scale_peak[i] = responses[i].peak_value;
        const auto [lo, hi] = std::minmax_element(responses[i].grid.data.begin(), responses[i].grid.data.end());
        all_flat = all_flat && *lo == *hi;
    }

    std::size_t chosen = 0;
    if (all_flat) {
        chosen = pool.unit_index();
        decision.no_confidence = true;
    } else {
        chosen = argmax_score(criterion == ScaleCriterion::Apce ? decision.per_scale_apce : decision.per_scale_peak, pool);
    }
    decision.chosen_index = chosen;
    decision.chosen_factor = pool[chosen];
    decision.applied_factor = applied[chosen];
    decision.sampled_window = windows[chosen];
    decision.response = std::move(responses[chosen]);
    return decision;
}

}  // namespace situp
