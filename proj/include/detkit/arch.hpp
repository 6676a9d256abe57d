#pragma once

#include "detkit/diagnostics.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace detkit {

enum class BlockKind {
    Focus,
    Conv,
    Bottleneck,
    C3,
    SPP,
    Upsample,
    Concat,
    Detect,
    ResStage,
    DenseBlock,
    Transition,
    WeightedFusion,
};

std::string_view block_kind_name(BlockKind kind);
std::optional<BlockKind> block_kind_from_name(std::string_view name);

// True for kinds whose repeat count `n` may exceed 1.
bool is_repeatable(BlockKind kind);

// One row of a configuration document. `from` entries are either relative
// offsets (< 0, -1 = previous layer) or absolute indices (>= 0); index -1 at
// layer 0 denotes the raw image input.
struct LayerDecl {
    std::vector<int> from;
    int repeat = 1;
    BlockKind kind = BlockKind::Conv;
    std::vector<double> args;

    bool operator==(const LayerDecl&) const = default;
};

struct AnchorMode {
    enum class Kind { Explicit, Auto };
    Kind kind = Kind::Auto;
    // Explicit: per-level (w, h) pairs in input pixels, one inner list per
    // detection level; every level carries the same number of anchors.
    std::vector<std::vector<std::pair<double, double>>> levels;
    // Auto: anchors per level, regenerated from dataset statistics.
    int k = 3;

    bool operator==(const AnchorMode&) const = default;

    int anchors_per_level() const {
        if (kind == Kind::Auto) return k;
        return levels.empty() ? 0 : int(levels.front().size());
    }
};

struct ArchSpec {
    int num_classes = 0;
    double depth_multiple = 1.0;
    double width_multiple = 1.0;
    AnchorMode anchors;
    std::vector<LayerDecl> layers; // backbone rows then head rows, one index space
    int backbone_len = 0;          // number of rows in the [backbone] section

    bool operator==(const ArchSpec&) const = default;

    // Resolves a `from` entry of layers[layer_idx] to an absolute index
    // (-1 = raw input). Callers must have validated the spec.
    int resolve_from(int layer_idx, int ref) const { return ref < 0 ? layer_idx + ref : ref; }
};

struct ParseResult {
    std::optional<ArchSpec> spec; // engaged iff no error diagnostics
    DiagnosticList diagnostics;

    bool ok() const { return spec.has_value(); }
};

// Parses a configuration document. Total: any byte sequence yields either a
// validated ArchSpec or diagnostics.
ParseResult parse_arch(std::string_view text);

// Canonical text form; parse_arch(serialize_arch(s)) is structurally equal
// to s. Numbers are printed in shortest round-trip form.
std::string serialize_arch(const ArchSpec& spec);

} // namespace detkit
