#include "detkit/autoanchor.hpp"

#include "detkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace detkit {

namespace {

struct LogPoint {
    double lw, lh;
};

double dist2(const LogPoint& a, const LogPoint& b) {
    double dw = a.lw - b.lw, dh = a.lh - b.lh;
    return dw * dw + dh * dh;
}

} // namespace

std::vector<WH> kmeans_anchors(const std::vector<WH>& boxes, int total_k, uint64_t seed) {
    if (boxes.empty()) throw std::invalid_argument("kmeans_anchors: empty box list");
    if (total_k <= 0) throw std::invalid_argument("kmeans_anchors: total_k must be positive");
    std::set<WH> distinct(boxes.begin(), boxes.end());
    if (size_t(total_k) > distinct.size())
        throw std::invalid_argument("kmeans_anchors: total_k exceeds distinct box count");
    for (const auto& [w, h] : boxes)
        if (!(w > 0) || !(h > 0))
            throw std::invalid_argument("kmeans_anchors: boxes must have positive extents");

    std::vector<LogPoint> pts(boxes.size());
    for (size_t i = 0; i < boxes.size(); ++i)
        pts[i] = {std::log(boxes[i].first), std::log(boxes[i].second)};

    // k-means++ seeding
    SplitMix64 rng(seed);
    std::vector<LogPoint> centroids;
    centroids.push_back(pts[rng.next_below(pts.size())]);
    std::vector<double> d2(pts.size());
    while (int(centroids.size()) < total_k) {
        double total = 0;
        for (size_t i = 0; i < pts.size(); ++i) {
            double best = dist2(pts[i], centroids[0]);
            for (size_t c = 1; c < centroids.size(); ++c)
                best = std::min(best, dist2(pts[i], centroids[c]));
            d2[i] = best;
            total += best;
        }
        size_t pick = 0;
        if (total > 0) {
            double target = rng.next_double() * total;
            double acc = 0;
            for (size_t i = 0; i < pts.size(); ++i) {
                acc += d2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = rng.next_below(pts.size());
        }
        centroids.push_back(pts[pick]);
    }

    // Lloyd iterations; stop when assignments stabilize
    std::vector<int> assign(pts.size(), -1);
    for (int iter = 0; iter < 300; ++iter) {
        bool changed = false;
        for (size_t i = 0; i < pts.size(); ++i) {
            int best = 0;
            double best_d = dist2(pts[i], centroids[0]);
            for (int c = 1; c < total_k; ++c) {
                double d = dist2(pts[i], centroids[size_t(c)]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }
        if (!changed) break;
        std::vector<double> sw(size_t(total_k), 0), sh(size_t(total_k), 0);
        std::vector<int> count(size_t(total_k), 0);
        for (size_t i = 0; i < pts.size(); ++i) {
            sw[size_t(assign[i])] += pts[i].lw;
            sh[size_t(assign[i])] += pts[i].lh;
            ++count[size_t(assign[i])];
        }
        for (int c = 0; c < total_k; ++c)
            if (count[size_t(c)] > 0)
                centroids[size_t(c)] = {sw[size_t(c)] / count[size_t(c)],
                                        sh[size_t(c)] / count[size_t(c)]};
        // empty clusters keep their previous centroid
    }

    std::vector<WH> out(size_t(total_k));
    for (int c = 0; c < total_k; ++c)
        out[size_t(c)] = {std::exp(centroids[size_t(c)].lw), std::exp(centroids[size_t(c)].lh)};
    std::sort(out.begin(), out.end(), [](const WH& a, const WH& b) {
        return a.first * a.second < b.first * b.second;
    });
    return out;
}

double best_possible_recall(const std::vector<WH>& boxes, const std::vector<WH>& anchors,
                            double ratio_threshold) {
    if (boxes.empty()) throw std::invalid_argument("best_possible_recall: empty box list");
    if (!(ratio_threshold > 1)) throw std::invalid_argument("best_possible_recall: threshold <= 1");
    if (anchors.empty()) return 0.0;
    long long recallable = 0;
    for (const auto& [w, h] : boxes) {
        for (const auto& [aw, ah] : anchors) {
            double r = std::max(std::max(w / aw, aw / w), std::max(h / ah, ah / h));
            if (r < ratio_threshold) {
                ++recallable;
                break;
            }
        }
    }
    return double(recallable) / double(boxes.size());
}

AnchorSet assign_levels(std::vector<WH> anchors, const std::vector<int>& strides,
                        int k_per_level) {
    if (anchors.size() != strides.size() * size_t(k_per_level))
        throw std::invalid_argument("assign_levels: anchor count != k_per_level * levels");
    std::sort(anchors.begin(), anchors.end(), [](const WH& a, const WH& b) {
        return a.first * a.second < b.first * b.second;
    });
    std::vector<int> ordered = strides;
    std::sort(ordered.begin(), ordered.end());

    AnchorSet set;
    set.k = k_per_level;
    size_t next = 0;
    for (int stride : ordered) {
        AnchorSet::Level level;
        level.stride = stride;
        for (int i = 0; i < k_per_level; ++i) level.anchors.push_back(anchors[next++]);
        set.levels.push_back(std::move(level));
    }
    return set;
}

AnchorSet synthetic_anchors(const std::vector<int>& strides, int k_per_level) {
    // geometric ladder around 4x the stride, elongated like typical priors;
    // the ladder is kept narrow enough that levels never overlap in area
    std::vector<WH> anchors;
    for (int stride : strides) {
        for (int i = 0; i < k_per_level; ++i) {
            double center = 4.0 * stride;
            double f = std::pow(2.0, (i - (k_per_level - 1) / 2.0) / k_per_level);
            anchors.push_back({center * f * 0.8, center * f * 1.25});
        }
    }
    return assign_levels(std::move(anchors), strides, k_per_level);
}

} // namespace detkit
