#pragma once

// One-pass evaluation: center-error precision, IoU success, AUC and
// attribute slices.

#include "situp/dataset.hpp"
#include "situp/imageproc.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace situp {

double center_error(const Rect& pred, const Rect& gt);
double iou(const Rect& pred, const Rect& gt);

struct Curve {
    std::vector<double> thresholds;
    std::vector<double> values;

    double at(double threshold) const;
};

// precision(t) = fraction of frames with error <= t, t = 0, 1, ..., 50 px.
Curve precision_curve(const std::vector<double>& errors);
// success(t) = fraction of frames with IoU > t, t = 0, 0.05, ..., 1.
Curve success_curve(const std::vector<double>& ious);
// Mean of the success curve over its 21 thresholds.
double auc(const Curve& success);

inline constexpr double kPrecisionThreshold = 20.0;

struct SequenceResult {
    std::string name;
    std::vector<std::string> attributes;
    std::vector<double> center_errors;
    std::vector<double> ious;
    Curve precision;
    Curve success;
    double precision_20 = 0.0;
    double auc = 0.0;
    std::size_t steps = 0;
    double step_seconds = 0.0;
};

// Frame 1 is skipped unless include_first. Predictions shorter than the
// ground truth (an aborted run) count the missing frames as misses.
SequenceResult evaluate_sequence(std::string name, std::vector<std::string> attributes, const std::vector<Rect>& pred,
    const std::vector<Box>& groundtruth, bool include_first = false);

struct SliceReport {
    std::string method;
    std::string slice;  // "ALL" or an attribute tag
    std::vector<std::string> sequences;
    Curve precision;
    Curve success;
    double precision_20 = 0.0;
    double auc = 0.0;
    double fps = 0.0;
};

// Averages per-sequence curves with equal weight per sequence, ordered by
// sequence name. With a filter, only that attribute's slice is produced;
// otherwise "ALL" plus one slice per attribute present.
std::vector<SliceReport> aggregate(std::vector<SequenceResult> results, std::string_view method,
    std::optional<std::string> attribute = std::nullopt);

// "method,slice,AUC,precision_20,fps"; fps is "NA" unless with_timing.
std::string format_table(const std::vector<SliceReport>& rows, bool with_timing);
// "threshold,value"
std::string format_curve(const Curve& curve);
// "method,sequence,frames,AUC,precision_20"
std::string format_per_sequence(std::string_view method, const std::vector<SequenceResult>& results);

}  // namespace situp
