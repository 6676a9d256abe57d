#pragma once

#include "detkit/diagnostics.hpp"
#include "detkit/evaluator.hpp"
#include "detkit/tensor.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace detkit {

// One manifest line: image_id width height label_path [raster_path]
struct ManifestEntry {
    std::string image_id;
    int width = 0;
    int height = 0;
    std::string label_path;
    std::string raster_path; // optional, empty when absent
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    std::string base_dir; // label/raster paths resolve relative to this
};

struct ManifestResult {
    std::optional<DatasetManifest> manifest;
    DiagnosticList diagnostics;
};

ManifestResult parse_manifest(std::string_view text, std::string base_dir = "");
ManifestResult load_manifest(const std::string& path);

// class cx cy w h, normalized to [0, 1]
struct LabelRecord {
    int class_id = 0;
    double cx = 0, cy = 0, w = 0, h = 0;
};

struct LabelReadResult {
    std::vector<GroundTruthBox> boxes;
    DiagnosticList diagnostics; // clamp warnings and per-line errors

    bool ok() const { return !has_errors(diagnostics); }
};

// Parses normalized label lines and denormalizes to pixel corner boxes.
// Values out of range by at most 1e-3 are clamped with a warning; beyond
// that, the line is an error.
LabelReadResult read_labels(std::string_view text, int image_w, int image_h,
                            const std::string& image_id);

struct SplitResult {
    DatasetManifest train, val, test;
};

// Seeded shuffle then contiguous partition; sizes are floor allocations with
// the remainder going to train. Throws std::invalid_argument for ratios that
// are non-positive or do not sum to 1 (tolerance 1e-9).
SplitResult split_dataset(const DatasetManifest& manifest, const std::array<double, 3>& ratios,
                          uint64_t seed);

struct StatsReport {
    std::map<int, long long> class_counts;
    struct Sample {
        int class_id;
        double cx, cy, w, h; // normalized
    };
    std::vector<Sample> samples; // one row per instance, CSV-exported
    struct AreaQuantiles {
        double min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
    };
    std::map<int, AreaQuantiles> area_by_class; // pixel^2
    int skipped_files = 0;
    DiagnosticList diagnostics;
};

StatsReport dataset_stats(const DatasetManifest& manifest);

// Affine map from source-image pixels to network-input pixels.
struct LetterboxMap {
    double scale = 1.0;
    double pad_x = 0, pad_y = 0;
    int src_w = 0, src_h = 0;

    Box to_input(const Box& b) const {
        return {b.x_min * scale + pad_x, b.y_min * scale + pad_y, b.x_max * scale + pad_x,
                b.y_max * scale + pad_y};
    }
    Box to_source(const Box& b) const {
        return {(b.x_min - pad_x) / scale, (b.y_min - pad_y) / scale, (b.x_max - pad_x) / scale,
                (b.y_max - pad_y) / scale};
    }
};

struct RasterResult {
    std::optional<Tensor> tensor;
    LetterboxMap map;
    DiagnosticList diagnostics;
};

// Decodes a binary 8-bit P6 PPM into a 3xHxW tensor scaled to [0, 1].
RasterResult decode_ppm(std::string_view bytes);

// Aspect-preserving resize (bilinear) onto a gray-0.5 canvas of the target size.
std::pair<Tensor, LetterboxMap> letterbox(const Tensor& src, int target_h, int target_w);

// decode_ppm + letterbox to the network input size.
RasterResult read_raster(std::string_view bytes, int target_h, int target_w);

} // namespace detkit
