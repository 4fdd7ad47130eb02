#include "covbal/hierarchy.hpp"

#include <array>
#include <set>
#include <stdexcept>

#include "covbal/errors.hpp"
#include "covbal/formula.hpp"
#include "lexer.hpp"

namespace covbal {

using detail::Lexer;
using detail::Token;
using detail::TokenKind;

UnitNode UnitNode::block(std::string name, Variance delta, int level) {
    UnitNode node;
    node.name = std::move(name);
    node.kind = NodeKind::Block;
    node.level = level;
    node.own_delta = delta;
    return node;
}

UnitNode UnitNode::unit(std::string name, std::vector<UnitNode> children, int level) {
    UnitNode node;
    node.name = std::move(name);
    node.kind = NodeKind::Unit;
    node.level = level;
    node.children = std::move(children);
    return node;
}

Variance unit_variance(std::span<const Variance> children_deltas) {
    Variance sum;
    for (Variance d : children_deltas) sum += d;
    return -sum;
}

std::vector<const NodeValue*> AggregationResult::mismatches() const {
    std::vector<const NodeValue*> out;
    for (const auto& node : nodes) {
        if (!node.matches_expectation()) out.push_back(&node);
    }
    return out;
}

const NodeValue* AggregationResult::find(std::string_view path) const {
    for (const auto& node : nodes) {
        if (node.path == path) return &node;
    }
    return nullptr;
}

namespace {

Variance fold(const UnitNode& node, const std::string& path, std::vector<NodeValue>& out) {
    const std::size_t slot = out.size();
    out.push_back(NodeValue{path, node.kind, node.level, Variance{}, node.external_delta});

    if (node.kind == NodeKind::Block) {
        if (!node.children.empty()) throw ValidationError("block '" + path + "' has children");
        if (!node.own_delta) throw ValidationError("block '" + path + "' has no delta");
        out[slot].value = *node.own_delta;
        return *node.own_delta;
    }
    if (node.own_delta) throw ValidationError("unit '" + path + "' carries its own delta; only blocks may");

    std::vector<Variance> child_values;
    child_values.reserve(node.children.size());
    for (const UnitNode& child : node.children) {
        if (child.level != node.level + 1) {
            throw ValidationError("'" + path + "/" + child.name + "' is at level " + std::to_string(child.level) +
                                  ", expected " + std::to_string(node.level + 1));
        }
        child_values.push_back(fold(child, path + "/" + child.name, out));
    }
    Variance value = unit_variance(child_values);
    out[slot].value = value;
    return value;
}

}  // namespace

AggregationResult aggregate_hierarchy(const UnitNode& root) {
    AggregationResult result;
    result.root = fold(root, root.name, result.nodes);
    return result;
}

namespace {

constexpr std::array<std::string_view, 5> kSymbols = {"{", "}", "=", "-", "+"};

class HierarchyParser {
public:
    explicit HierarchyParser(std::string_view text) : lex_(text, kSymbols) {}

    UnitNode parse() {
        UnitNode root = parse_node(0);
        if (!lex_.at_end()) lex_.fail_expected(lex_.peek(), "end of file (a tree has exactly one root)");
        return root;
    }

private:
    Token expect_name() {
        const Token tok = lex_.peek();
        if (tok.kind != TokenKind::Identifier || !is_identifier(tok.text)) lex_.fail_expected(tok, "node name");
        return lex_.next();
    }

    Variance parse_signed() {
        lex_.expect_symbol("=");
        bool negative = false;
        if (lex_.accept_symbol("-")) {
            negative = true;
        } else {
            lex_.accept_symbol("+");
        }
        Token number = lex_.expect_number();
        std::int64_t value = 0;
        try {
            value = std::stoll(number.text);
        } catch (const std::out_of_range&) {
            lex_.fail(number, "integer out of range");
        }
        return Variance{negative ? -value : value};
    }

    std::string parse_path() {
        lex_.expect_symbol("=");
        return lex_.read_word("{}").text;
    }

    UnitNode parse_node(int level) {
        const Token head = lex_.peek();
        if (lex_.accept_identifier("unit")) return parse_unit(level);
        if (lex_.accept_identifier("block")) return parse_block(level, head);
        lex_.fail_expected(head, "'unit' or 'block'");
    }

    UnitNode parse_unit(int level) {
        UnitNode node = UnitNode::unit(expect_name().text, {}, level);
        if (lex_.accept_identifier("expect")) node.external_delta = parse_signed();
        const Token open = lex_.expect_symbol("{");
        std::set<std::string, std::less<>> names;
        while (!lex_.peek_symbol("}")) {
            if (lex_.at_end()) {
                lex_.fail(lex_.peek(), "unbalanced '{' opened at " + std::to_string(open.line) + ":" +
                                           std::to_string(open.column) + ": expected '}'");
            }
            const Token child_at = lex_.peek();
            UnitNode child = parse_node(level + 1);
            if (!names.insert(child.name).second) {
                lex_.fail(child_at, "duplicate child '" + child.name + "' in unit '" + node.name + "'");
            }
            node.children.push_back(std::move(child));
        }
        lex_.next();
        return node;
    }

    UnitNode parse_block(int level, const Token& head) {
        UnitNode node;
        node.name = expect_name().text;
        node.kind = NodeKind::Block;
        node.level = level;
        std::optional<std::string> rules;
        std::optional<std::string> iface;
        std::optional<std::string> model;
        for (;;) {
            const Token key = lex_.peek();
            auto once = [&](bool already) {
                if (already) lex_.fail(key, "'" + key.text + "' given twice for block '" + node.name + "'");
                lex_.next();
            };
            if (lex_.peek_identifier("delta")) {
                once(node.own_delta.has_value());
                node.own_delta = parse_signed();
            } else if (lex_.peek_identifier("expect")) {
                once(node.external_delta.has_value());
                node.external_delta = parse_signed();
            } else if (lex_.peek_identifier("rules")) {
                once(rules.has_value());
                rules = parse_path();
            } else if (lex_.peek_identifier("iface")) {
                once(iface.has_value());
                iface = parse_path();
            } else if (lex_.peek_identifier("model")) {
                once(model.has_value());
                model = parse_path();
            } else {
                break;
            }
        }
        const bool file_backed = rules || iface || model;
        if (node.own_delta && file_backed) {
            lex_.fail(head, "block '" + node.name + "' gives both a delta and input files");
        }
        if (!node.own_delta && !file_backed) {
            lex_.fail(head, "block '" + node.name + "' needs 'delta = <int>' or 'rules = ... iface = ...'");
        }
        if (file_backed) {
            if (!rules || !iface) lex_.fail(head, "block '" + node.name + "' needs both 'rules' and 'iface'");
            node.files = BlockFiles{*rules, *iface, model};
        }
        return node;
    }

    Lexer lex_;
};

}  // namespace

UnitNode parse_hierarchy(std::string_view text) { return HierarchyParser(text).parse(); }

void resolve_blocks(UnitNode& root, const std::function<Variance(const BlockFiles&)>& analyse) {
    if (root.kind == NodeKind::Block && root.files && !root.own_delta) root.own_delta = analyse(*root.files);
    for (UnitNode& child : root.children) resolve_blocks(child, analyse);
}

}  // namespace covbal
