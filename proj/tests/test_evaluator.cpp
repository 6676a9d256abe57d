#include "detkit/evaluator.hpp"
#include "detkit/rng.hpp"
#include "doctest.h"
#include "oracle_ap.hpp"

#include <cmath>

using namespace detkit;

namespace {

GroundTruthBox gt(const std::string& img, int cls, double x0, double y0, double x1, double y1) {
    Box b{x0, y0, x1, y1};
    return {img, b, cls, b.area()};
}

DetectionRecord det(const std::string& img, int cls, double conf, double x0, double y0, double x1,
                    double y1) {
    return {img, cls, conf, Box{x0, y0, x1, y1}};
}

// Random instance sized like the acceptance bound: <=10 images, <=20 dets, <=10 gts.
struct Instance {
    std::vector<DetectionRecord> dets;
    std::vector<GroundTruthBox> gts;
};

Instance random_instance(uint64_t seed) {
    SplitMix64 rng(seed);
    Instance inst;
    int n_images = 1 + int(rng.next_below(10));
    int n_gts = 1 + int(rng.next_below(10));
    for (int g = 0; g < n_gts; ++g) {
        std::string img = "img" + std::to_string(rng.next_below(uint64_t(n_images)));
        int cls = int(rng.next_below(3));
        double w = 1.0 + rng.next_double() * 149.0;
        double h = 1.0 + rng.next_double() * 149.0;
        double x0 = rng.next_double() * 200.0;
        double y0 = rng.next_double() * 200.0;
        inst.gts.push_back(gt(img, cls, x0, y0, x0 + w, y0 + h));
    }
    int n_dets = int(rng.next_below(21));
    for (int d = 0; d < n_dets; ++d) {
        double conf = rng.next_double();
        if (!inst.gts.empty() && rng.next_double() < 0.7) {
            const auto& g = inst.gts[rng.next_below(inst.gts.size())];
            double jx = (rng.next_double() - 0.5) * 0.4 * g.box.width();
            double jy = (rng.next_double() - 0.5) * 0.4 * g.box.height();
            double sw = 0.8 + 0.4 * rng.next_double();
            double sh = 0.8 + 0.4 * rng.next_double();
            double w = g.box.width() * sw, h = g.box.height() * sh;
            double cx = (g.box.x_min + g.box.x_max) / 2 + jx;
            double cy = (g.box.y_min + g.box.y_max) / 2 + jy;
            int cls = rng.next_double() < 0.85 ? g.class_id : int(rng.next_below(3));
            inst.dets.push_back(det(g.image_id, cls, conf, cx - w / 2, cy - h / 2, cx + w / 2,
                                    cy + h / 2));
        } else {
            std::string img = "img" + std::to_string(rng.next_below(uint64_t(n_images)));
            double w = 1.0 + rng.next_double() * 149.0;
            double h = 1.0 + rng.next_double() * 149.0;
            double x0 = rng.next_double() * 200.0;
            double y0 = rng.next_double() * 200.0;
            inst.dets.push_back(det(img, int(rng.next_below(3)), conf, x0, y0, x0 + w, y0 + h));
        }
    }
    return inst;
}

double evaluator_ap(const Instance& inst, int cls, SizeBucket bucket, double thr) {
    std::vector<std::string> images;
    for (const auto& g : inst.gts) images.push_back(g.image_id);
    for (const auto& d : inst.dets) images.push_back(d.image_id);
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    std::vector<MatchRecords> recs;
    for (const auto& img : images) {
        std::vector<DetectionRecord> ds;
        std::vector<GroundTruthBox> gs;
        for (const auto& d : inst.dets)
            if (d.image_id == img && d.class_id == cls) ds.push_back(d);
        for (const auto& g : inst.gts)
            if (g.image_id == img && g.class_id == cls) gs.push_back(g);
        if (ds.empty() && gs.empty()) continue;
        recs.push_back(match_detections(ds, gs, thr, bucket));
    }
    auto ap = average_precision(recs);
    return ap ? *ap : -1.0;
}

double oracle_ap(const Instance& inst, int cls, SizeBucket bucket, double thr) {
    std::vector<oracle::Det> ds;
    std::vector<oracle::Gt> gs;
    for (const auto& d : inst.dets)
        ds.push_back({d.image_id, d.class_id, d.confidence, d.box.x_min, d.box.y_min, d.box.x_max,
                      d.box.y_max});
    for (const auto& g : inst.gts)
        gs.push_back({g.image_id, g.class_id, g.box.x_min, g.box.y_min, g.box.x_max, g.box.y_max});
    return oracle::ap(ds, gs, cls, bucket, thr);
}

} // namespace

TEST_CASE("iou basics") {
    Box a{0, 0, 2, 2};
    CHECK(iou(a, a) == doctest::Approx(1.0));
    CHECK(iou(a, Box{5, 5, 7, 7}) == 0.0);
    CHECK(iou(a, Box{1, 0, 3, 2}) == doctest::Approx(1.0 / 3.0));
    // touching boxes are disjoint
    CHECK(iou(a, Box{2, 0, 4, 2}) == 0.0);
}

TEST_CASE("size bucket boundaries") {
    CHECK(size_bucket(1023.0) == SizeBucket::Small);
    CHECK(size_bucket(1024.0) == SizeBucket::Medium);
    CHECK(size_bucket(9216.0) == SizeBucket::Medium);
    CHECK(size_bucket(9217.0) == SizeBucket::Large);
    CHECK(size_bucket(5000.0) == SizeBucket::Medium);
    CHECK_THROWS_AS(size_bucket(0.0), std::invalid_argument);
    CHECK_THROWS_AS(size_bucket(-3.0), std::invalid_argument);
}

TEST_CASE("matching: single det on single gt") {
    auto recs = match_detections({det("a", 0, 0.8, 0, 0, 10, 10)}, {gt("a", 0, 0, 0, 10, 10)},
                                 0.5, SizeBucket::All);
    REQUIRE(recs.det_outcomes.size() == 1);
    CHECK(recs.det_outcomes[0] == DetOutcome::TP);
    CHECK(recs.gt_outcomes[0] == GtOutcome::Matched);
    CHECK(recs.non_ignored_gts == 1);
}

TEST_CASE("matching: two dets on one gt, single-claim rule") {
    auto recs = match_detections(
        {det("a", 0, 0.7, 0, 0, 10, 10), det("a", 0, 0.9, 0, 0, 10, 10)},
        {gt("a", 0, 0, 0, 10, 10)}, 0.5, SizeBucket::All);
    CHECK(recs.det_outcomes[1] == DetOutcome::TP); // higher confidence claims
    CHECK(recs.det_outcomes[0] == DetOutcome::FP);
}

TEST_CASE("matching: small-bucket pass with only a large gt nearby") {
    // det overlaps (IoU 0.9+) a large gt only; in the small bucket both are ignored
    auto recs = match_detections({det("a", 0, 0.9, 0, 0, 100, 100)},
                                 {gt("a", 0, 0, 0, 100, 101)}, 0.5, SizeBucket::Small);
    CHECK(recs.det_outcomes[0] == DetOutcome::Ignored);
    CHECK(recs.gt_outcomes[0] == GtOutcome::Ignored);
    CHECK(recs.non_ignored_gts == 0);
}

TEST_CASE("matching: unmatched off-bucket det is ignored, in-bucket det is FP") {
    // no gts at all; dets fall back to their own area for bucket membership
    auto recs = match_detections(
        {det("a", 0, 0.9, 0, 0, 100, 100), det("a", 0, 0.8, 0, 0, 10, 10)},
        {gt("a", 0, 500, 500, 501, 501)}, 0.5, SizeBucket::Small);
    CHECK(recs.det_outcomes[0] == DetOutcome::Ignored); // area 10000, outside the small bucket
    CHECK(recs.det_outcomes[1] == DetOutcome::FP);      // area 100, small, unmatched
}

TEST_CASE("average precision: hand-derived PR curve") {
    // 2 gts; dets conf 0.9 (TP), 0.8 (FP), 0.7 (TP) -> (51*1 + 50*(2/3))/101
    MatchRecords r;
    r.det_outcomes = {DetOutcome::TP, DetOutcome::FP, DetOutcome::TP};
    r.det_confidences = {0.9, 0.8, 0.7};
    r.gt_outcomes = {GtOutcome::Matched, GtOutcome::Matched};
    r.non_ignored_gts = 2;
    auto ap = average_precision({r});
    REQUIRE(ap.has_value());
    CHECK(std::abs(*ap - 0.8350) < 1e-4);
    CHECK(std::abs(*ap - (51.0 + 50.0 * (2.0 / 3.0)) / 101.0) < 1e-12);
}

TEST_CASE("average precision: perfect and empty") {
    MatchRecords perfect;
    perfect.det_outcomes = {DetOutcome::TP, DetOutcome::TP};
    perfect.det_confidences = {0.9, 0.8};
    perfect.gt_outcomes = {GtOutcome::Matched, GtOutcome::Matched};
    perfect.non_ignored_gts = 2;
    CHECK(*average_precision({perfect}) == doctest::Approx(1.0));

    MatchRecords none;
    none.non_ignored_gts = 3;
    CHECK(*average_precision({none}) == doctest::Approx(0.0));

    MatchRecords no_gts;
    no_gts.det_outcomes = {DetOutcome::FP};
    no_gts.det_confidences = {0.5};
    CHECK_FALSE(average_precision({no_gts}).has_value());
}

TEST_CASE("evaluate: perfect detections give 1.0 everywhere") {
    std::vector<GroundTruthBox> gts = {
        gt("a", 0, 0, 0, 10, 10),      // small
        gt("a", 1, 0, 0, 50, 50),      // medium
        gt("b", 2, 0, 0, 200, 200),    // large
        gt("b", 3, 20, 20, 60, 60),    // medium
    };
    std::vector<DetectionRecord> dets;
    for (const auto& g : gts)
        dets.push_back(det(g.image_id, g.class_id, 0.9, g.box.x_min, g.box.y_min, g.box.x_max,
                           g.box.y_max));
    auto report = evaluate(dets, gts, std::set<int>{0, 1});
    CHECK(*report.map[SizeBucket::All] == doctest::Approx(1.0));
    for (const auto& [cell, ap] : report.ap)
        if (ap.has_value()) CHECK(*ap == doctest::Approx(1.0));
}

TEST_CASE("evaluate: mAP averages a zero for an undetected class") {
    std::vector<GroundTruthBox> gts = {gt("a", 0, 0, 0, 50, 50), gt("a", 1, 100, 100, 150, 150)};
    std::vector<DetectionRecord> dets = {det("a", 0, 0.9, 0, 0, 50, 50)};
    auto report = evaluate(dets, gts, std::set<int>{0, 1});
    REQUIRE(report.map[SizeBucket::All].has_value());
    CHECK(*report.map[SizeBucket::All] == doctest::Approx(0.5));
}

TEST_CASE("evaluate: bucket gt counts partition the total") {
    SplitMix64 rng(7);
    std::vector<GroundTruthBox> gts;
    for (int i = 0; i < 40; ++i) {
        double w = 1 + rng.next_double() * 149, h = 1 + rng.next_double() * 149;
        gts.push_back(gt("img" + std::to_string(i % 5), int(rng.next_below(4)), 0, 0, w, h));
    }
    auto report = evaluate({det("img0", 0, 0.5, 0, 0, 10, 10)}, gts);
    CHECK(report.gt_counts[SizeBucket::Small] + report.gt_counts[SizeBucket::Medium] +
              report.gt_counts[SizeBucket::Large] ==
          report.gt_counts[SizeBucket::All]);
    CHECK(report.gt_counts[SizeBucket::All] == 40);
    CHECK_THROWS_AS(evaluate({}, {}), std::invalid_argument);
}

TEST_CASE("AP properties: low FP never raises, extra TP never lowers") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        Instance inst = random_instance(seed);
        if (inst.gts.empty()) continue;
        int cls = inst.gts[0].class_id;
        double base = evaluator_ap(inst, cls, SizeBucket::All, 0.5);
        if (base < 0) continue;

        // false positive below every existing confidence
        Instance with_fp = inst;
        with_fp.dets.push_back(det(inst.gts[0].image_id, cls, 1e-9, 900, 900, 950, 950));
        CHECK(evaluator_ap(with_fp, cls, SizeBucket::All, 0.5) <= base + 1e-12);

        // a perfect detection on a gt no detection currently claims
        for (const auto& g : inst.gts) {
            if (g.class_id != cls) continue;
            bool covered = false;
            for (const auto& d : inst.dets)
                if (d.image_id == g.image_id && d.class_id == cls && iou(d.box, g.box) >= 0.5)
                    covered = true;
            if (covered) continue;
            Instance with_tp = inst;
            with_tp.dets.push_back(det(g.image_id, cls, 1.0, g.box.x_min, g.box.y_min,
                                       g.box.x_max, g.box.y_max));
            CHECK(evaluator_ap(with_tp, cls, SizeBucket::All, 0.5) >= base - 1e-12);
            break;
        }
    }
}

TEST_CASE("AP permutation invariance with distinct confidences") {
    for (uint64_t seed = 100; seed < 120; ++seed) {
        Instance inst = random_instance(seed);
        if (inst.dets.size() < 2 || inst.gts.empty()) continue;
        int cls = inst.gts[0].class_id;
        double base = evaluator_ap(inst, cls, SizeBucket::All, 0.5);
        Instance shuffled = inst;
        SplitMix64 rng(seed * 31 + 1);
        for (size_t i = shuffled.dets.size(); i > 1; --i)
            std::swap(shuffled.dets[i - 1], shuffled.dets[rng.next_below(i)]);
        double after = evaluator_ap(shuffled, cls, SizeBucket::All, 0.5);
        if (base < 0)
            CHECK(after < 0);
        else
            CHECK(after == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("oracle equivalence on random instances") {
    const SizeBucket buckets[] = {SizeBucket::Small, SizeBucket::Medium, SizeBucket::Large,
                                  SizeBucket::All};
    for (uint64_t seed = 0; seed < 60; ++seed) {
        Instance inst = random_instance(seed);
        for (int cls = 0; cls < 3; ++cls) {
            for (SizeBucket b : buckets) {
                double mine = evaluator_ap(inst, cls, b, 0.5);
                double ref = oracle_ap(inst, cls, b, 0.5);
                CHECK(std::abs(mine - ref) < 1e-9);
            }
        }
    }
}

TEST_CASE("family comparison reproduces published difference columns") {
    std::vector<ComparisonRow> rows = {
        {"S", "map50", 0.926, 0.955},       {"M", "map50", 0.932, 0.9605},
        {"L", "map50", 0.935, 0.964},       {"X", "map50", 0.9385, 0.9605},
        {"S", "map50_small", 0.869, 0.925}, {"M", "map50_small", 0.8795, 0.9425},
        {"L", "map50_small", 0.886, 0.9545},{"X", "map50_small", 0.8975, 0.9465},
        {"S", "time_ms", 8.0, 8.9},         {"M", "time_ms", 11.6, 14.3},
        {"L", "time_ms", 16.6, 19.6},       {"X", "time_ms", 26.9, 30.6},
    };
    auto table = compare_families(rows);
    REQUIRE(table.rows.size() == 12);
    const double map_diffs[] = {3.13, 3.06, 3.10, 2.34};
    const double small_diffs[] = {6.44, 7.16, 7.73, 5.46};
    const double time_diffs[] = {0.9, 2.7, 3.0, 3.7};
    for (size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(table.rows[i].difference - map_diffs[i]) < 1e-9);
        CHECK(std::abs(table.rows[4 + i].difference - small_diffs[i]) < 1e-9);
        CHECK(std::abs(table.rows[8 + i].difference - time_diffs[i]) < 1e-9);
    }
    CHECK(std::abs(table.summary_map_points - 2.7125) < 1e-9);
    CHECK(std::abs(table.summary_small_points - 5.9125) < 1e-9);
    CHECK(std::abs(table.summary_time_delta - 2.575) < 1e-9);
}
