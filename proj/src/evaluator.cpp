#include "detkit/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace detkit {

double iou(const Box& a, const Box& b) {
    double ix = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    double iy = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    if (ix <= 0 || iy <= 0) return 0.0;
    double inter = ix * iy;
    double uni = a.area() + b.area() - inter;
    return uni > 0 ? inter / uni : 0.0;
}

SizeBucket size_bucket(double area) {
    if (!(area > 0)) throw std::invalid_argument("size_bucket: area must be positive");
    if (area < 32.0 * 32.0) return SizeBucket::Small;
    if (area > 96.0 * 96.0) return SizeBucket::Large;
    return SizeBucket::Medium;
}

MatchRecords match_detections(const std::vector<DetectionRecord>& dets,
                              const std::vector<GroundTruthBox>& gts, double iou_threshold,
                              SizeBucket bucket) {
    MatchRecords rec;
    rec.det_outcomes.assign(dets.size(), DetOutcome::FP);
    rec.det_confidences.resize(dets.size());
    for (size_t i = 0; i < dets.size(); ++i) rec.det_confidences[i] = dets[i].confidence;
    rec.gt_outcomes.assign(gts.size(), GtOutcome::Missed);

    std::vector<bool> gt_ignored(gts.size(), false);
    for (size_t g = 0; g < gts.size(); ++g) {
        if (!in_bucket(gts[g].area, bucket)) {
            gt_ignored[g] = true;
            rec.gt_outcomes[g] = GtOutcome::Ignored;
        } else {
            ++rec.non_ignored_gts;
        }
    }

    // confidence order, ties by input order
    std::vector<size_t> order(dets.size());
    std::iota(order.begin(), order.end(), size_t(0));
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return dets[a].confidence > dets[b].confidence;
    });

    std::vector<bool> gt_matched(gts.size(), false);
    for (size_t d : order) {
        int best_gt = -1;
        double best_iou = 0;
        double best_ignored_iou = 0;
        for (size_t g = 0; g < gts.size(); ++g) {
            double v = iou(dets[d].box, gts[g].box);
            if (gt_ignored[g]) {
                best_ignored_iou = std::max(best_ignored_iou, v);
            } else if (!gt_matched[g] && v >= iou_threshold && v > best_iou) {
                best_iou = v;
                best_gt = int(g);
            }
        }
        if (best_gt >= 0) {
            gt_matched[best_gt] = true;
            rec.gt_outcomes[best_gt] = GtOutcome::Matched;
            rec.det_outcomes[d] = DetOutcome::TP;
        } else if (best_ignored_iou >= iou_threshold) {
            rec.det_outcomes[d] = DetOutcome::Ignored;
        } else if (!in_bucket(dets[d].box.area(), bucket)) {
            rec.det_outcomes[d] = DetOutcome::Ignored;
        }
        // else stays FP
    }
    return rec;
}

std::optional<double> average_precision(const std::vector<MatchRecords>& records) {
    long long n_gt = 0;
    for (const auto& r : records) n_gt += r.non_ignored_gts;
    if (n_gt == 0) return std::nullopt;

    struct Entry {
        double conf;
        bool tp;
    };
    std::vector<Entry> entries;
    for (const auto& r : records)
        for (size_t i = 0; i < r.det_outcomes.size(); ++i) {
            if (r.det_outcomes[i] == DetOutcome::Ignored) continue;
            entries.push_back({r.det_confidences[i], r.det_outcomes[i] == DetOutcome::TP});
        }
    // pooled order: confidence descending, ties by pooling order
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.conf > b.conf; });

    std::vector<double> recall(entries.size()), precision(entries.size());
    long long tp = 0, fp = 0;
    for (size_t i = 0; i < entries.size(); ++i) {
        (entries[i].tp ? tp : fp)++;
        recall[i] = double(tp) / double(n_gt);
        precision[i] = double(tp) / double(tp + fp);
    }
    // precision envelope: running maximum from high recall down
    for (size_t i = precision.size(); i-- > 1;)
        precision[i - 1] = std::max(precision[i - 1], precision[i]);

    double sum = 0;
    for (int s = 0; s <= 100; ++s) {
        double r = s / 100.0;
        auto it = std::lower_bound(recall.begin(), recall.end(), r);
        if (it != recall.end()) sum += precision[size_t(it - recall.begin())];
    }
    return sum / 101.0;
}

EvalReport evaluate(const std::vector<DetectionRecord>& dets,
                    const std::vector<GroundTruthBox>& gts,
                    const std::optional<std::set<int>>& class_subset, double iou_threshold) {
    if (gts.empty()) throw std::invalid_argument("evaluate: empty ground-truth set");

    EvalReport report;
    report.iou_threshold = iou_threshold;

    std::set<int> classes;
    for (const auto& g : gts) classes.insert(g.class_id);
    for (const auto& d : dets) classes.insert(d.class_id);
    std::set<int> included =
        class_subset ? *class_subset : classes; // default: every class present

    std::vector<std::string> image_ids;
    for (const auto& g : gts) image_ids.push_back(g.image_id);
    for (const auto& d : dets) image_ids.push_back(d.image_id);
    std::sort(image_ids.begin(), image_ids.end());
    image_ids.erase(std::unique(image_ids.begin(), image_ids.end()), image_ids.end());

    const SizeBucket buckets[] = {SizeBucket::Small, SizeBucket::Medium, SizeBucket::Large,
                                  SizeBucket::All};
    for (SizeBucket b : buckets) report.gt_counts[b] = 0;

    for (int cls : classes) {
        // per-image slices, preserving input order within an image
        for (SizeBucket b : buckets) {
            std::vector<MatchRecords> recs;
            for (const auto& id : image_ids) {
                std::vector<DetectionRecord> img_dets;
                std::vector<GroundTruthBox> img_gts;
                for (const auto& d : dets)
                    if (d.image_id == id && d.class_id == cls) img_dets.push_back(d);
                for (const auto& g : gts)
                    if (g.image_id == id && g.class_id == cls) img_gts.push_back(g);
                if (img_dets.empty() && img_gts.empty()) continue;
                recs.push_back(match_detections(img_dets, img_gts, iou_threshold, b));
            }
            report.ap[{cls, b}] = average_precision(recs);
            long long n = 0;
            for (const auto& r : recs) n += r.non_ignored_gts;
            if (b != SizeBucket::All) report.gt_counts[b] += int(n);
        }
    }
    report.gt_counts[SizeBucket::All] = int(gts.size());

    report.classes.assign(included.begin(), included.end());
    for (SizeBucket b : buckets) {
        double sum = 0;
        int n = 0;
        for (int cls : included) {
            auto it = report.ap.find({cls, b});
            if (it != report.ap.end() && it->second.has_value()) {
                sum += *it->second;
                ++n;
            }
        }
        report.map[b] = n > 0 ? std::optional<double>(sum / n) : std::nullopt;
    }
    return report;
}

static double round2(double v) {
    return std::round(v * 100.0) / 100.0;
}

static bool is_map_metric(const std::string& m) {
    return m.rfind("map", 0) == 0;
}

static bool is_time_metric(const std::string& m) {
    return m.rfind("time", 0) == 0 || m.rfind("inference", 0) == 0;
}

ComparisonTable compare_families(const std::vector<ComparisonRow>& rows) {
    ComparisonTable table;
    double map_sum = 0, small_sum = 0, time_sum = 0;
    int map_n = 0, small_n = 0, time_n = 0;

    for (const auto& r : rows) {
        ComparisonTable::Row out;
        out.scale = r.scale;
        out.metric = r.metric;
        out.baseline = r.baseline;
        out.variant = r.variant;
        out.relative = is_map_metric(r.metric);
        if (out.relative) {
            out.difference = round2((r.variant - r.baseline) / r.baseline * 100.0);
        } else {
            out.difference = r.variant - r.baseline;
        }
        table.rows.push_back(out);

        if (r.metric == "map50") {
            map_sum += (r.variant - r.baseline) * 100.0;
            ++map_n;
        } else if (r.metric == "map50_small") {
            small_sum += (r.variant - r.baseline) * 100.0;
            ++small_n;
        } else if (is_time_metric(r.metric)) {
            time_sum += r.variant - r.baseline;
            ++time_n;
        }
    }
    table.summary_map_points = map_n ? map_sum / map_n : std::nan("");
    table.summary_small_points = small_n ? small_sum / small_n : std::nan("");
    table.summary_time_delta = time_n ? time_sum / time_n : std::nan("");
    return table;
}

} // namespace detkit
