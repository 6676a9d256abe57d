#pragma once

#include "detkit/geometry.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace detkit {

struct GroundTruthBox {
    std::string image_id;
    Box box;
    int class_id = 0;
    double area = 0; // (x_max-x_min)*(y_max-y_min), squared pixels
};

// Scored detection in evaluator input form (image-scoped, unlike the
// interpreter's single-image Detection).
struct DetectionRecord {
    std::string image_id;
    int class_id = 0;
    double confidence = 0;
    Box box;
};

enum class SizeBucket { Small, Medium, Large, All };

inline const char* bucket_name(SizeBucket b) {
    switch (b) {
        case SizeBucket::Small: return "small";
        case SizeBucket::Medium: return "medium";
        case SizeBucket::Large: return "large";
        default: return "all";
    }
}

// Intersection over union; 0 when disjoint.
double iou(const Box& a, const Box& b);

// small iff area < 32^2; large iff area > 96^2; medium otherwise.
// Throws std::invalid_argument for non-positive area.
SizeBucket size_bucket(double area);

inline bool in_bucket(double area, SizeBucket b) {
    if (b == SizeBucket::All) return true;
    return size_bucket(area) == b;
}

enum class DetOutcome { TP, FP, Ignored };
enum class GtOutcome { Matched, Missed, Ignored };

// Outcome of matching one image's detections of one class against its ground
// truths under a size bucket. Order follows the input vectors.
struct MatchRecords {
    std::vector<DetOutcome> det_outcomes;
    std::vector<double> det_confidences;
    std::vector<GtOutcome> gt_outcomes;
    int non_ignored_gts = 0;
};

// Greedy COCO-convention matching: detections in descending confidence (ties
// by input order) claim the highest-IoU unmatched non-ignored gt with
// IoU >= threshold. A detection whose best overlap >= threshold is with an
// ignored gt is itself ignored, as is an unmatched detection whose own area
// falls outside the bucket.
MatchRecords match_detections(const std::vector<DetectionRecord>& dets,
                              const std::vector<GroundTruthBox>& gts, double iou_threshold,
                              SizeBucket bucket);

// 101-point interpolated AP over pooled match records. Returns nullopt when
// no non-ignored ground truth exists (class/bucket absent from mAP).
std::optional<double> average_precision(const std::vector<MatchRecords>& records);

struct EvalReport {
    struct Cell {
        int class_id;
        SizeBucket bucket;
        bool operator<(const Cell& o) const {
            return class_id != o.class_id ? class_id < o.class_id : bucket < o.bucket;
        }
    };
    std::map<Cell, std::optional<double>> ap;         // AP at the evaluation IoU
    std::map<SizeBucket, std::optional<double>> map;  // mean over the class subset
    std::map<SizeBucket, int> gt_counts;              // non-ignored gts per bucket
    std::vector<int> classes;                         // classes included in mAP
    double iou_threshold = 0.5;
};

EvalReport evaluate(const std::vector<DetectionRecord>& dets,
                    const std::vector<GroundTruthBox>& gts,
                    const std::optional<std::set<int>>& class_subset = std::nullopt,
                    double iou_threshold = 0.5);

// One family-comparison input row: a named metric measured for the baseline
// and the variant at one scale.
struct ComparisonRow {
    std::string scale;
    std::string metric; // "map..." metrics compare relatively, "time..." absolutely
    double baseline = 0;
    double variant = 0;
};

struct ComparisonTable {
    struct Row {
        std::string scale;
        std::string metric;
        double baseline = 0;
        double variant = 0;
        double difference = 0; // percent for map metrics (2-decimal rounded), absolute for time
        bool relative = false;
    };
    std::vector<Row> rows;
    // Means over scales: mAP point difference x100, small-object point
    // difference x100, time delta. NaN when the metric group is absent.
    double summary_map_points = 0;
    double summary_small_points = 0;
    double summary_time_delta = 0;
};

ComparisonTable compare_families(const std::vector<ComparisonRow>& rows);

} // namespace detkit
