#include "situp/ablation.hpp"

#include "situp/error.hpp"
#include "situp/eval.hpp"

#include <cmath>
#include <cstdio>

namespace situp {

AblationReport apce_vs_maxresponse_ablation(const Sequence& sequence, const TrackerConfig& base,
    std::shared_ptr<const ColorNameTable> color_names)
{
    if (sequence.groundtruth.empty()) {
        throw Error(ErrorCode::MissingGroundtruth, "ablation needs ground truth");
    }
    TrackerConfig apce_cfg = base;
    apce_cfg.criterion = ScaleCriterion::Apce;
    TrackerConfig maxresp_cfg = base;
    maxresp_cfg.criterion = ScaleCriterion::MaxResponse;

    const Rect init = to_rect(sequence.groundtruth.front());
    AblationReport report;
    report.apce_run = run_sequence(sequence.source(), init, apce_cfg, color_names);
    report.maxresp_run = run_sequence(sequence.source(), init, maxresp_cfg, color_names);

    const std::size_t n = std::min({report.apce_run.boxes.size(), report.maxresp_run.boxes.size(), sequence.groundtruth.size()});
    double sum_a = 0.0;
    double sum_m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Rect gt = to_rect(sequence.groundtruth[i]);
        const Rect& a = report.apce_run.boxes[i];
        const Rect& m = report.maxresp_run.boxes[i];
        AblationFrame f;
        f.frame = static_cast<int>(i) + 1;
        f.iou_apce = iou(a, gt);
        f.iou_maxresp = iou(m, gt);
        f.scale_ratio_apce = std::sqrt(a.area() / gt.area());
        f.scale_ratio_maxresp = std::sqrt(m.area() / gt.area());
        if (i > 0) {
            sum_a += f.iou_apce;
            sum_m += f.iou_maxresp;
        }
        report.frames.push_back(f);
    }
    if (n > 1) {
        report.mean_iou_apce = sum_a / static_cast<double>(n - 1);
        report.mean_iou_maxresp = sum_m / static_cast<double>(n - 1);
    }
    if (n > 0) {
        report.final_scale_error_apce = std::abs(report.frames.back().scale_ratio_apce - 1.0);
        report.final_scale_error_maxresp = std::abs(report.frames.back().scale_ratio_maxresp - 1.0);
    }
    return report;
}

std::string format_ablation(const AblationReport& report)
{
    std::string out = "frame,iou_apce,iou_maxresp,scale_ratio_apce,scale_ratio_maxresp\n";
    char buf[160];
    for (const auto& f : report.frames) {
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f,%.6f\n", f.frame, f.iou_apce, f.iou_maxresp,
            f.scale_ratio_apce, f.scale_ratio_maxresp);
        out += buf;
    }
    return out;
}

std::string format_ablation_summary(const AblationReport& report)
{
    char buf[256];
    std::snprintf(buf, sizeof(buf), "criterion,mean_iou,final_scale_error\napce,%.6f,%.6f\nmaxresp,%.6f,%.6f\n",
        report.mean_iou_apce, report.final_scale_error_apce, report.mean_iou_maxresp, report.final_scale_error_maxresp);
    return buf;
}

}  // namespace situp
