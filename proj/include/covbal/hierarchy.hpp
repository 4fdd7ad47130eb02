#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covbal/variance.hpp"

namespace covbal {

enum class NodeKind { Unit, Block };

/// Files a block leaf is analysed from; paths are as written in the tree file.
struct BlockFiles {
    std::string rules;
    std::string iface;
    std::optional<std::string> model;

    friend bool operator==(const BlockFiles&, const BlockFiles&) = default;
};

/// One node of a design decomposition. The root (whole circuit) has level 0;
/// every child sits one level below its parent. Blocks are leaves carrying
/// their own variance; units derive theirs from their children.
struct UnitNode {
    std::string name;
    NodeKind kind = NodeKind::Unit;
    int level = 0;
    std::vector<UnitNode> children;
    std::optional<Variance> own_delta;
    /// Where a block's delta comes from when it is not given literally.
    std::optional<BlockFiles> files;
    /// Declared value to cross-check against the computed one.
    std::optional<Variance> external_delta;

    bool is_leaf() const noexcept { return kind == NodeKind::Block; }

    static UnitNode block(std::string name, Variance delta, int level = 0);
    static UnitNode unit(std::string name, std::vector<UnitNode> children, int level = 0);
};

/// -(sum of the children's variances). An empty unit has variance 0.
Variance unit_variance(std::span<const Variance> children_deltas);

struct NodeValue {
    std::string path;  // slash-joined names from the root
    NodeKind kind = NodeKind::Unit;
    int level = 0;
    Variance value;
    std::optional<Variance> expected;

    bool matches_expectation() const { return !expected || *expected == value; }
};

struct AggregationResult {
    /// Pre-order, children in declaration order.
    std::vector<NodeValue> nodes;
    Variance root;

    std::vector<const NodeValue*> mismatches() const;
    const NodeValue* find(std::string_view path) const;
};

/// Bottom-up fold of unit_variance. Throws ValidationError for a block
/// without a delta or with children, a unit carrying its own delta, or a
/// child whose level is not its parent's plus one.
AggregationResult aggregate_hierarchy(const UnitNode& root);

/// Parses the tree format:
///
///     unit <name> [expect = <int>] { <child>* }
///     block <name> delta = <int> [expect = <int>]
///     block <name> rules = <path> iface = <path> [model = <path>] [expect = <int>]
///
/// Levels are assigned from nesting depth. File-backed blocks come back with
/// `files` set and no own_delta.
UnitNode parse_hierarchy(std::string_view text);

/// Fills own_delta for every file-backed block using `analyse`.
void resolve_blocks(UnitNode& root, const std::function<Variance(const BlockFiles&)>& analyse);

}  // namespace covbal
