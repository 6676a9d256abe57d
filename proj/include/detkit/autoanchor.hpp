#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace detkit {

using WH = std::pair<double, double>;

struct AnchorSet {
    struct Level {
        int stride = 0;
        std::vector<WH> anchors; // sorted by area ascending
    };
    std::vector<Level> levels; // sorted by ascending stride
    int k = 0;                 // anchors per level
    double bpr = -1.0;         // best possible recall vs the generating boxes; < 0 when unset

    std::vector<WH> flat() const {
        std::vector<WH> out;
        for (const auto& l : levels) out.insert(out.end(), l.anchors.begin(), l.anchors.end());
        return out;
    }
};

// k-means over (log w, log h) with k-means++ seeding from a seeded generator.
// Converges when assignments stabilize, capped at 300 iterations. Centroids
// are returned in original (w, h) space, sorted by area ascending.
// Throws std::invalid_argument for an empty box list or total_k exceeding the
// number of distinct boxes.
std::vector<WH> kmeans_anchors(const std::vector<WH>& boxes, int total_k, uint64_t seed);

// Fraction of boxes for which some anchor a has
// max(w/a_w, a_w/w, h/a_h, a_h/h) < ratio_threshold. Default threshold 4.
double best_possible_recall(const std::vector<WH>& boxes, const std::vector<WH>& anchors,
                            double ratio_threshold = 4.0);

// Sorts anchors by area and partitions them contiguously across levels:
// smallest k_per_level to the smallest stride. Throws on length mismatch.
AnchorSet assign_levels(std::vector<WH> anchors, const std::vector<int>& strides, int k_per_level);

// Default anchors for a head with no dataset to cluster: a small geometric
// ladder around 4x each level stride.
AnchorSet synthetic_anchors(const std::vector<int>& strides, int k_per_level);

} // namespace detkit
