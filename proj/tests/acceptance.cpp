// Acceptance checks. Prints one PASS/FAIL line each and exits non-zero on any failure.

#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "covbal/report.hpp"
#include "generators.hpp"
#include "paths.hpp"

using namespace covbal;
using covbal::testing::data_path;
using covbal::testing::read_data;
using covbal::testing::negate_atoms;
using covbal::testing::strip_negations;
using covbal::testing::uniform;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

template <class T>
std::string str(const T& v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

BlockInterface arbiter_iface() { return parse_interface(read_data("arbiter.iface")); }
RuleSet arbiter_rules() { return parse_rules(read_data("arbiter.rules")); }

Outcome variance_table() {
    Outcome o;
    // Asserted counts (req1 req2 ack1 ack2) and delta per rule, as published.
    const int expected[8][5] = {{0, 0, 0, 0, 0}, {1, 0, 1, 0, 0}, {0, 1, 0, 1, 0}, {1, 0, 1, 1, 1},
                                {0, 1, 1, 1, 1}, {1, 1, 2, 1, 1}, {2, 2, 2, 2, 0}, {2, 2, 2, 2, 0}};
    const char* signals[4] = {"req1", "req2", "ack1", "ack2"};
    RuleTable t = set_variance(arbiter_rules(), arbiter_iface());
    o.require(t.rows.size() == 8, "expected 8 rows");
    for (std::size_t r = 0; r < t.rows.size() && r < 8; ++r) {
        for (int s = 0; s < 4; ++s) {
            o.require(t.rows[r].asserted(signals[s]) == expected[r][s],
                      t.rows[r].rule_label + "/" + signals[s] + " = " + str(t.rows[r].asserted(signals[s])));
        }
        o.require(t.rows[r].delta.value == expected[r][4], t.rows[r].rule_label + " delta");
    }
    o.require(t.total == Variance{3}, "total " + str(t.total.value));
    return o;
}

Outcome puncture_calibration() {
    Outcome o;
    PunctureReport r = model_puncture_total(parse_model(read_data("arbiter.smv")), arbiter_iface());
    o.require(r.punctures.size() == 1 && r.punctures[0].name == "robin", "punctures != {robin}");
    o.require(!r.punctures.empty() && r.punctures[0].pressure == Variance{-3}, "robin pressure");
    o.require(r.total == Variance{-3}, "total " + str(r.total.value));
    return o;
}

Outcome balance() {
    Outcome o;
    ModelAst model = parse_model(read_data("arbiter.smv"));
    AnalysisReport r = analyze_block(arbiter_rules(), arbiter_iface(), &model);
    o.require(r.balance.residual == Variance{0}, "residual " + str(r.balance.residual.value));
    o.require(r.balance.verdict == Verdict::Balanced, "verdict");
    auto cli = covbal::testing::run_cli("analyze --rules '" + data_path("arbiter.rules") + "' --iface '" +
                                        data_path("arbiter.iface") + "' --model '" + data_path("arbiter.smv") + "'");
    o.require(cli.exit_code == 0, "cli exit " + str(cli.exit_code));
    return o;
}

Outcome variation_signs() {
    Outcome o;
    BlockInterface iface = arbiter_iface();
    auto residual = [&](const char* rules, const char* model_file) {
        ModelAst model = parse_model(read_data(model_file));
        return analyze_block(parse_rules(read_data(rules)), iface, &model).balance.residual;
    };
    Variance weak = residual("arbiter_weak_rho4.rules", "arbiter_weak_rho4.smv");
    Variance hidden = residual("arbiter.rules", "arbiter_hidden_input.smv");
    Variance dup_total = model_puncture_total(parse_model(read_data("arbiter_duplicated.smv")), iface).total;

    o.require(weak.value > 0, "weakened rho4 residual " + str(weak.value));
    o.require(hidden.value < 0, "hidden-input residual " + str(hidden.value));
    o.require(dup_total.value < -3, "duplicated-signal puncture total " + str(dup_total.value));
    // Regression values produced by the statement-count convention.
    o.require(weak == Variance{1}, "weakened rho4 regression");
    o.require(hidden == Variance{-1}, "hidden-input regression");
    o.require(dup_total == Variance{-11}, "duplicated-signal regression");
    return o;
}

Outcome single_rule_example() {
    Outcome o;
    BlockInterface iface = parse_interface("block b\ninputs ack\noutputs req, wr\n");
    RuleVarianceRow row = rule_variance(Rule{"rho", parse_formula("AG((!ack & req & wr) -> AF ack)")}, iface);
    o.require(row.delta == Variance{1}, "delta " + str(row.delta.value));
    return o;
}

Outcome mixed_puncture() {
    Outcome o;
    std::vector<Message> messages = {Message(Orientation::OutwardNormal, {"s1", "s2"}),
                                     Message(Orientation::OutwardNormal, {"s3"}),
                                     Message(Orientation::InwardNormal, {"s4", "s5"})};
    Variance mu = puncture_measure(messages);
    o.require(mu == Variance{1}, "mu " + str(mu.value));
    return o;
}

std::int64_t oracle_value(const UnitNode& node, int distance) {
    if (node.kind == NodeKind::Block) return (distance % 2 == 0 ? 1 : -1) * node.own_delta->value;
    std::int64_t sum = 0;
    for (const auto& c : node.children) sum += oracle_value(c, distance + 1);
    return sum;
}

void preorder(const UnitNode& n, std::vector<const UnitNode*>& out) {
    out.push_back(&n);
    for (const auto& c : n.children) preorder(c, out);
}

std::int64_t leaf_sum(const UnitNode& n) {
    if (n.kind == NodeKind::Block) return n.own_delta->value;
    std::int64_t s = 0;
    for (const auto& c : n.children) s += leaf_sum(c);
    return s;
}

int leaf_count(const UnitNode& n) {
    if (n.kind == NodeKind::Block) return 1;
    int s = 0;
    for (const auto& c : n.children) s += leaf_count(c);
    return s;
}

int depth_of(const UnitNode& n) {
    int d = 0;
    for (const auto& c : n.children) d = std::max(d, 1 + depth_of(c));
    return d;
}

Outcome hierarchy_properties() {
    Outcome o;
    std::mt19937 rng(404);
    int trees = 0;
    for (int i = 0; i < 1000; ++i, ++trees) {
        int budget = uniform(rng, 1, 100);
        UnitNode root = covbal::testing::random_tree(rng, 5, budget);
        o.require(depth_of(root) <= 5 && leaf_count(root) <= 100, "generator out of bounds");
        AggregationResult r = aggregate_hierarchy(root);
        std::vector<const UnitNode*> nodes;
        preorder(root, nodes);
        o.require(nodes.size() == r.nodes.size(), "node count");
        for (std::size_t k = 0; k < nodes.size() && k < r.nodes.size(); ++k) {
            o.require(r.nodes[k].value.value == oracle_value(*nodes[k], 0), "node " + r.nodes[k].path);
        }
    }
    for (int depth = 1; depth <= 5; ++depth) {
        for (int i = 0; i < 200; ++i, ++trees) {
            int budget = 100;
            UnitNode root = covbal::testing::random_tree(rng, depth, budget, 0, depth);
            std::int64_t sign = depth % 2 == 0 ? 1 : -1;
            o.require(aggregate_hierarchy(root).root.value == sign * leaf_sum(root),
                      "closed form at depth " + str(depth));
        }
    }
    if (o.pass) o.detail = str(trees) + " trees";
    return o;
}

Outcome round_trips() {
    Outcome o;
    std::mt19937 rng(808);
    for (int i = 0; i < 1000; ++i) {
        Formula f = covbal::testing::random_formula(rng, 6);
        o.require(parse_formula(pretty_print(f)) == f, "formula " + pretty_print(f));
    }
    for (int i = 0; i < 200; ++i) {
        ModelAst m = covbal::testing::random_model(rng);
        o.require(parse_model(pretty_print(m)) == m, "model\n" + pretty_print(m));
    }
    if (o.pass) o.detail = "1000 formulas, 200 models";
    return o;
}

Expr negate_refs_to(const Expr& e, const std::string& p) {
    if (e.kind() == ExprKind::VarRef) return e.name() == p ? Expr::negation(e) : e;
    std::vector<Expr> ops;
    for (const auto& c : e.operands()) ops.push_back(negate_refs_to(c, p));
    switch (e.kind()) {
        case ExprKind::Not:
            return Expr::negation(ops[0]);
        case ExprKind::And:
            return Expr::conjunction(ops);
        case ExprKind::Or:
            return Expr::disjunction(ops);
        case ExprKind::IfThenElse:
            return Expr::if_then_else(ops[0], ops[1], ops[2]);
        case ExprKind::Case: {
            std::vector<std::pair<Expr, Expr>> branches;
            for (std::size_t i = 0; i + 1 < ops.size(); i += 2) branches.emplace_back(ops[i], ops[i + 1]);
            return Expr::case_of(branches);
        }
        default:
            return e;
    }
}

Outcome invariant_suite() {
    Outcome o;
    std::mt19937 rng(909);
    BlockInterface iface = arbiter_iface();
    ModelAst arbiter_model = parse_model(read_data("arbiter.smv"));
    for (int i = 0; i < 300; ++i) {
        RuleSet rs;
        int n = uniform(rng, 0, 6);
        for (int k = 0; k < n; ++k) rs.rules.push_back(Rule{"r" + str(k), covbal::testing::random_formula(rng, 4)});
        RuleTable t = set_variance(rs, iface);

        Variance sum;
        for (const auto& r : rs.rules) sum += rule_variance(r, iface).delta;
        o.require(sum == t.total, "additivity");
        o.require(set_variance(rs, iface.with_directions_swapped()).total == -t.total, "direction antisymmetry");

        RuleSet negated;
        for (const auto& r : rs.rules) negated.rules.push_back(Rule{r.label, negate_atoms(strip_negations(r.body))});
        for (const auto& row : set_variance(negated, iface).rows) o.require(row.delta.value == 0, "negation nullity");

        for (const auto& r : rs.rules) {
            auto c = count_occurrences(r.body);
            auto flipped = count_occurrences(Formula::negation(r.body));
            for (const auto& [name, pc] : c) {
                o.require(flipped.at(name).asserted == pc.negated && flipped.at(name).negated == pc.asserted,
                          "negation parity");
            }
        }

        AnalysisReport a = analyze_block(rs, iface, &arbiter_model);
        AnalysisReport b = analyze_block(rs, iface, &arbiter_model);
        o.require(render_structured(a) == render_structured(b) && render_text(a, iface) == render_text(b, iface),
                  "rendering determinism");
    }

    BlockInterface single("m", {{"v0", Direction::Input}});
    for (int i = 0; i < 200; ++i) {
        ModelAst m = covbal::testing::random_model(rng);
        for (const auto& p : classify_variables(m, single).punctures) {
            Variance before = puncture_pressure(m, p, single);
            ModelAst more = m;
            more.statements.push_back({StatementKind::Define, "probe", Expr::var(p)});
            o.require(puncture_pressure(more, p, single) == before - Variance{1}, "statement-count monotonicity");

            ModelAst denser = m;
            for (auto& s : denser.statements) {
                if (referenced_names(s.value).contains(p)) s.value = Expr::conjunction({s.value, Expr::var(p)});
            }
            o.require(puncture_pressure(denser, p, single) == before, "extra occurrences change nothing");

            ModelAst negated = m;
            for (auto& s : negated.statements) s.value = negate_refs_to(s.value, p);
            o.require(puncture_pressure(negated, p, single) == before, "negation blindness");
        }
    }
    return o;
}

Outcome coverage_check() {
    Outcome o;
    auto uncovered = check_signal_coverage(parse_rules(read_data("single_request.rules")), arbiter_iface());
    o.require(uncovered == std::vector<std::string>{"req1", "req2", "ack1", "ack2"},
              "uncovered has " + str(uncovered.size()) + " entries");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"AC1 arbiter variance table and total +3", variance_table},
        {"AC2 arbiter puncture report {robin: -3}", puncture_calibration},
        {"AC3 arbiter rules + model balance (residual 0, exit 0)", balance},
        {"AC4 variation residual signs", variation_signs},
        {"AC5 single write-request rule delta +1", single_rule_example},
        {"AC6 mixed puncture measure +1", mixed_puncture},
        {"AC7 hierarchy aggregation vs nested-sum oracle", hierarchy_properties},
        {"AC8 parser round trips", round_trips},
        {"AC9 module invariant suite", invariant_suite},
        {"AC10 signal coverage on single-rule set", coverage_check},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
        std::cout << '\n';
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
