#include "situp/eval.hpp"

#include "situp/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace situp {

double center_error(const Rect& pred, const Rect& gt) { return std::hypot(pred.cx - gt.cx, pred.cy - gt.cy); }

double iou(const Rect& pred, const Rect& gt)
{
    const double ix = std::max(0.0, std::min(pred.left() + pred.w, gt.left() + gt.w) - std::max(pred.left(), gt.left()));
    const double iy = std::max(0.0, std::min(pred.top() + pred.h, gt.top() + gt.h) - std::max(pred.top(), gt.top()));
    const double inter = ix * iy;
    const double uni = pred.area() + gt.area() - inter;
    return uni > 0.0 ? std::min(1.0, inter / uni) : 0.0;
}

double Curve::at(double threshold) const
{
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (std::abs(thresholds[i] - threshold) < 1e-9) {
            return values[i];
        }
    }
    throw Error(ErrorCode::InvalidConfig, "threshold not on the curve grid");
}

Curve precision_curve(const std::vector<double>& errors)
{
    if (errors.empty()) {
        throw Error(ErrorCode::EmptyTrajectory, "no frames to evaluate");
    }
    Curve curve;
    for (int t = 0; t <= 50; ++t) {
        const auto hits = std::count_if(errors.begin(), errors.end(), [t](double e) { return e <= t; });
        curve.thresholds.push_back(t);
        curve.values.push_back(static_cast<double>(hits) / static_cast<double>(errors.size()));
    }
    return curve;
}

Curve success_curve(const std::vector<double>& ious)
{
    if (ious.empty()) {
        throw Error(ErrorCode::EmptyTrajectory, "no frames to evaluate");
    }
    Curve curve;
    for (int i = 0; i <= 20; ++i) {
        const double t = i / 20.0;
        const auto hits = std::count_if(ious.begin(), ious.end(), [t](double v) { return v > t; });
        curve.thresholds.push_back(t);
        curve.values.push_back(static_cast<double>(hits) / static_cast<double>(ious.size()));
    }
    return curve;
}

double auc(const Curve& success)
{
    if (success.values.empty()) {
        throw Error(ErrorCode::EmptyTrajectory, "empty success curve");
    }
    double sum = 0.0;
    for (double v : success.values) {
        sum += v;
    }
    return sum / static_cast<double>(success.values.size());
}

SequenceResult evaluate_sequence(std::string name, std::vector<std::string> attributes, const std::vector<Rect>& pred,
    const std::vector<Box>& groundtruth, bool include_first)
{
    SequenceResult result;
    result.name = std::move(name);
    result.attributes = std::move(attributes);
    for (std::size_t i = include_first ? 0 : 1; i < groundtruth.size(); ++i) {
        const Rect gt = to_rect(groundtruth[i]);
        if (i < pred.size()) {
            result.center_errors.push_back(center_error(pred[i], gt));
            result.ious.push_back(iou(pred[i], gt));
        } else {
            result.center_errors.push_back(std::numeric_limits<double>::infinity());
            result.ious.push_back(0.0);
        }
    }
    result.precision = precision_curve(result.center_errors);
    result.success = success_curve(result.ious);
    result.precision_20 = result.precision.at(kPrecisionThreshold);
    result.auc = auc(result.success);
    return result;
}

namespace {

SliceReport average(std::string_view method, std::string slice, const std::vector<const SequenceResult*>& members)
{
    SliceReport report;
    report.method = std::string(method);
    report.slice = std::move(slice);
    report.precision.thresholds = members.front()->precision.thresholds;
    report.precision.values.assign(report.precision.thresholds.size(), 0.0);
    report.success.thresholds = members.front()->success.thresholds;
    report.success.values.assign(report.success.thresholds.size(), 0.0);
    std::size_t steps = 0;
    double seconds = 0.0;
    for (const auto* r : members) {
        report.sequences.push_back(r->name);
        for (std::size_t i = 0; i < report.precision.values.size(); ++i) {
            report.precision.values[i] += r->precision.values[i];
        }
        for (std::size_t i = 0; i < report.success.values.size(); ++i) {
            report.success.values[i] += r->success.values[i];
        }
        steps += r->steps;
        seconds += r->step_seconds;
    }
    const double n = static_cast<double>(members.size());
    for (auto& v : report.precision.values) {
        v /= n;
    }
    for (auto& v : report.success.values) {
        v /= n;
    }
    report.precision_20 = report.precision.at(kPrecisionThreshold);
    report.auc = auc(report.success);
    report.fps = seconds > 0.0 ? static_cast<double>(steps) / seconds : 0.0;
    return report;
}

}  // namespace

std::vector<SliceReport> aggregate(std::vector<SequenceResult> results, std::string_view method,
    std::optional<std::string> attribute)
{
    if (results.empty()) {
        throw Error(ErrorCode::EmptyTrajectory, "no sequences to aggregate");
    }
    if (attribute && !is_attribute_tag(*attribute)) {
        throw Error(ErrorCode::UnknownAttribute, "unknown attribute '" + *attribute + "'");
    }
    std::stable_sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.name < b.name; });

    auto members_of = [&](std::optional<std::string_view> tag) {
        std::vector<const SequenceResult*> out;
        for (const auto& r : results) {
            if (!tag || std::find(r.attributes.begin(), r.attributes.end(), *tag) != r.attributes.end()) {
                out.push_back(&r);
            }
        }
        return out;
    };

    std::vector<SliceReport> reports;
    if (attribute) {
        const auto members = members_of(*attribute);
        if (members.empty()) {
            throw Error(ErrorCode::EmptyTrajectory, "no sequence carries attribute " + *attribute);
        }
        reports.push_back(average(method, *attribute, members));
        return reports;
    }
    reports.push_back(average(method, "ALL", members_of(std::nullopt)));
    for (auto tag : kAttributeTags) {
        const auto members = members_of(tag);
        if (!members.empty()) {
            reports.push_back(average(method, std::string(tag), members));
        }
    }
    return reports;
}

namespace {

std::string fixed(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

std::string format_table(const std::vector<SliceReport>& rows, bool with_timing)
{
    std::string out = "method,slice,AUC,precision_20,fps\n";
    for (const auto& r : rows) {
        out += r.method + ',' + r.slice + ',' + fixed(r.auc) + ',' + fixed(r.precision_20) + ','
            + (with_timing ? fixed(r.fps) : std::string("NA")) + '\n';
    }
    return out;
}

std::string format_curve(const Curve& curve)
{
    std::string out = "threshold,value\n";
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        out += fixed(curve.thresholds[i]) + ',' + fixed(curve.values[i]) + '\n';
    }
    return out;
}

std::string format_per_sequence(std::string_view method, const std::vector<SequenceResult>& results)
{
    std::string out = "method,sequence,frames,AUC,precision_20\n";
    for (const auto& r : results) {
        out += std::string(method) + ',' + r.name + ',' + std::to_string(r.ious.size()) + ',' + fixed(r.auc) + ','
            + fixed(r.precision_20) + '\n';
    }
    return out;
}

}  // namespace situp
