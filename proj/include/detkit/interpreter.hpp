#pragma once

#include "detkit/autoanchor.hpp"
#include "detkit/geometry.hpp"
#include "detkit/graph.hpp"
#include "detkit/tensor.hpp"

#include <cstdint>
#include <vector>

namespace detkit {

// Per-node parameter arrays, laid out in each node's primitive order:
// conv weights [c_out][c_in][k][k] then bias [c_out]; fusion raw weights.
struct WeightStore {
    std::vector<std::vector<float>> node_params; // indexed by node id
    uint64_t seed = 0;

    long long total_parameters() const {
        long long n = 0;
        for (const auto& v : node_params) n += (long long)v.size();
        return n;
    }
};

// Deterministic init: conv weights and biases uniform in [-s, s] with
// s = 1/sqrt(fan_in) per layer, fusion weights 1. Same (graph, seed) yields a
// bit-identical store; each node draws from its own substream.
WeightStore init_weights(const CompiledGraph& graph, uint64_t seed);

struct Detection {
    Box box;          // input pixels, corner form
    int class_id = 0;
    double confidence = 0; // in [0, 1]
};

struct RunResult {
    std::vector<Tensor> head_tensors; // one per Detect input level
    ShapeTable observed;              // shapes recorded during execution
};

// Executes the graph on one input tensor. Dead nodes are skipped. Throws
// std::runtime_error on runtime shape mismatch or non-finite outputs.
RunResult run(const CompiledGraph& graph, const WeightStore& weights, const Tensor& input);

// Decodes raw head tensors: center (2*sig(t_xy)-0.5+cell)*stride, size
// (2*sig(t_wh))^2*anchor, confidence sig(obj)*max_c sig(cls_c). Entries below
// conf_threshold are dropped.
std::vector<Detection> decode(const std::vector<Tensor>& head_tensors, const AnchorSet& anchors,
                              const std::vector<int>& strides, int num_classes,
                              double conf_threshold);

// Class-wise greedy suppression by descending confidence (ties by input
// order); drops detections overlapping an already-kept same-class detection
// with IoU > iou_threshold.
std::vector<Detection> nms(const std::vector<Detection>& dets, double iou_threshold);

struct BenchStats {
    double mean_ms = 0;
    double median_ms = 0;
    std::vector<double> per_run_ms;
};

// Wall-clock statistics over identical forward passes; one warm-up pass excluded.
BenchStats bench(const CompiledGraph& graph, const WeightStore& weights, const Tensor& input,
                 int runs);

} // namespace detkit
