#pragma once

// Scale-selection criterion ablation: two trackers that share every setting
// except the score used to pick a scale (APCE vs. raw peak response).

#include "situp/dataset.hpp"
#include "situp/tracker.hpp"

#include <memory>
#include <string>
#include <vector>

namespace situp {

struct AblationFrame {
    int frame = 0;  // 1-based
    double iou_apce = 0.0;
    double iou_maxresp = 0.0;
    double scale_ratio_apce = 1.0;  // sqrt(pred area / gt area)
    double scale_ratio_maxresp = 1.0;
};

struct AblationReport {
    std::vector<AblationFrame> frames;
    SequenceRun apce_run;
    SequenceRun maxresp_run;
    double mean_iou_apce = 0.0;  // over frames 2..N
    double mean_iou_maxresp = 0.0;
    double final_scale_error_apce = 0.0;  // |ratio - 1| at the last frame
    double final_scale_error_maxresp = 0.0;
};

AblationReport apce_vs_maxresponse_ablation(const Sequence& sequence, const TrackerConfig& base,
    std::shared_ptr<const ColorNameTable> color_names = nullptr);

// "frame,iou_apce,iou_maxresp,scale_ratio_apce,scale_ratio_maxresp"
std::string format_ablation(const AblationReport& report);
// "criterion,mean_iou,final_scale_error"
std::string format_ablation_summary(const AblationReport& report);

}  // namespace situp
