#pragma once

#include "detkit/arch.hpp"
#include "detkit/diagnostics.hpp"
#include "detkit/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace detkit {

struct ScaleProfile {
    enum class Name { S, M, L, X, Custom };
    Name name = Name::Custom;
    double depth_multiple = 1.0;
    double width_multiple = 1.0;

    static ScaleProfile standard(Name n);
    static std::optional<ScaleProfile> standard(std::string_view name);
    // Profile carrying the spec's own multipliers.
    static ScaleProfile from_spec(const ArchSpec& spec) {
        return {Name::Custom, spec.depth_multiple, spec.width_multiple};
    }
};

// n > 1: max(round-half-away-from-zero(n * depth_multiple), 1); n == 1 passes through.
int scale_depth(int n, double depth_multiple);

// ceil(c / 8) * 8
int round_channels(double c);

// Primitive op inside one node's lowered program. Slots [0, num_inputs) are
// the node's external inputs; each primitive appends one output slot.
struct Prim {
    enum class Kind {
        Conv,         // k, stride, c_in, c_out, act; weights [c_out][c_in][k][k] + bias [c_out]
        MaxPool,      // k, stride 1, pad k/2
        AvgPool,      // 2x2, stride 2
        Upsample,     // nearest 2x
        Concat,       // channel concat, spatial sizes must agree
        Add,          // elementwise, shapes must agree
        SpaceToDepth, // 2x2 -> 4c, halves spatial
        Fusion,       // fast normalized fusion; one raw weight per input
    };
    Kind kind = Kind::Conv;
    std::vector<int> srcs; // slot ids
    int k = 1;
    int stride = 1;
    int c_in = 0;
    int c_out = 0;
    bool act = true; // SiLU after conv

    long long param_count() const {
        if (kind == Kind::Conv) return 1LL * k * k * c_in * c_out + c_out;
        if (kind == Kind::Fusion) return (long long)srcs.size();
        return 0;
    }
};

struct Node {
    int id = 0;
    BlockKind kind = BlockKind::Conv;
    std::vector<int> inputs; // node ids; -1 = raw image input
    int repeat = 1;          // after depth scaling
    int out_channels = 0;    // after width scaling; 0 for Detect
    std::vector<Prim> prims; // lowered program; node output = last slot (non-Detect)
    long long params = 0;
    bool dead = false; // unreachable from Detect; skipped by the interpreter
};

struct ShapeTable {
    std::vector<Shape> node_shapes;  // per node; {0,0,0} for Detect and dead nodes
    std::vector<Shape> head_shapes;  // per Detect input level
    std::vector<int> detect_strides; // input width / feature-map width, ascending
};

struct CompiledGraph {
    std::vector<Node> nodes; // topologically ordered (declaration order)
    int detect_node = -1;
    Shape input_shape;
    int num_classes = 0;
    int anchors_per_level = 0;
    ScaleProfile profile;

    std::vector<int> detect_inputs() const { return nodes[detect_node].inputs; }
};

struct CompileResult {
    std::optional<CompiledGraph> graph;
    ShapeTable shapes; // valid iff graph engaged
    DiagnosticList diagnostics;

    bool ok() const { return graph.has_value(); }
};

CompileResult compile(const ArchSpec& spec, const ScaleProfile& profile, Shape input_shape);

enum class XsMode { Inclusive, Exclusive };

struct RewireResult {
    std::optional<ArchSpec> spec;
    DiagnosticList diagnostics;

    bool ok() const { return spec.has_value(); }
};

// Re-routes the head toward the stride-4 feature map. Requires the baseline
// three-level topology (Detect with exactly 3 inputs at strides 8/16/32).
// Inclusive adds a fourth arm; exclusive additionally drops the stride-32
// input, leaving its arm disconnected (compile flags it dead; see
// prune_unreachable). Anchor mode is forced to auto in both cases.
RewireResult rewire_xs(const ArchSpec& spec, XsMode mode);

// Removes layers with no path to Detect, renumbering references.
ArchSpec prune_unreachable(const ArchSpec& spec);

struct ParamReport {
    long long params = 0;
    long long macs = 0; // multiply-accumulates over convolutions only
};

ParamReport param_report(const CompiledGraph& graph);

// One line per node: "idx kind from=<ids> out=<c>x<h>x<w> params=<n>", then
// totals and Detect strides.
std::string format_graph_report(const CompiledGraph& graph, const ShapeTable& shapes);

} // namespace detkit
