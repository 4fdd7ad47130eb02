#include "covbal/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace covbal {

std::string_view to_string(PunctureSource s) {
    switch (s) {
        case PunctureSource::None:
            return "none";
        case PunctureSource::Manual:
            return "manual";
        case PunctureSource::Model:
            return "model";
    }
    return "none";
}

std::vector<std::string> check_signal_coverage(const RuleSet& rules, const BlockInterface& iface) {
    std::set<std::string, std::less<>> seen;
    for (const Rule& rule : rules.rules) {
        for (const auto& [atom, count] : count_occurrences(rule.body)) seen.insert(atom);
    }
    std::vector<std::string> uncovered;
    for (const auto& signal : iface.signals()) {
        if (!seen.contains(signal.name)) uncovered.push_back(signal.name);
    }
    return uncovered;
}

AnalysisReport analyze_block(const RuleSet& rules, const BlockInterface& iface, const ModelAst* model) {
    AnalysisReport report;
    report.block = iface.block_name();
    report.signals = iface.signals();
    report.table = set_variance(rules, iface);

    std::set<std::string> unknown;
    for (const auto& row : report.table.rows) {
        for (const auto& atom : row.unknown_atoms) {
            unknown.insert(atom);
            report.warnings.push_back("rule " + row.rule_label + ": atom '" + atom + "' is not an interface signal");
        }
        for (const auto& atom : row.puncture_atoms) {
            report.warnings.push_back("rule " + row.rule_label + ": puncture '" + atom +
                                      "' appears in a rule and contributes nothing");
        }
    }
    report.unknown_atoms.assign(unknown.begin(), unknown.end());

    report.uncovered_signals = check_signal_coverage(rules, iface);
    for (const auto& s : report.uncovered_signals) {
        report.warnings.push_back("signal '" + s + "' does not appear in any rule");
    }

    std::vector<Variance> pressures;
    if (model != nullptr) {
        report.puncture_source = PunctureSource::Model;
        PunctureReport pr = model_puncture_total(*model, iface);
        for (auto& entry : pr.punctures) pressures.push_back(entry.pressure);
        report.punctures = std::move(pr.punctures);
        for (auto& w : pr.warnings) report.warnings.push_back(std::move(w));
    } else if (!iface.punctures().empty()) {
        report.puncture_source = PunctureSource::Manual;
        for (const auto& name : iface.punctures()) {
            auto it = iface.manual_pressures().find(name);
            PunctureEntry entry{name, {}, Variance{}};
            if (it != iface.manual_pressures().end()) {
                entry.pressure = it->second;
            } else {
                report.warnings.push_back("no model and no pressure line for puncture '" + name +
                                          "'; counted as 0");
            }
            pressures.push_back(entry.pressure);
            report.punctures.push_back(std::move(entry));
        }
    }
    report.balance = block_balance(report.table.total, pressures);
    return report;
}

namespace {

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string strip_trailing(std::string line) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line;
}

std::string_view verdict_label(Verdict v) {
    switch (v) {
        case Verdict::Balanced:
            return "Balanced";
        case Verdict::PositiveImbalance:
            return "PositiveImbalance";
        case Verdict::NegativeImbalance:
            return "NegativeImbalance";
    }
    return "Balanced";
}

}  // namespace

std::string render_table(const RuleTable& table, const BlockInterface& iface) {
    const std::vector<std::string> columns = iface.column_order();
    std::size_t label_width = std::string("Total").size();
    for (const auto& row : table.rows) label_width = std::max(label_width, row.rule_label.size());

    std::vector<std::size_t> widths;
    for (const auto& c : columns) widths.push_back(std::max<std::size_t>(c.size(), 5));
    constexpr std::size_t delta_width = 6;

    std::ostringstream out;
    std::string line = pad_right("Rule", label_width);
    for (std::size_t i = 0; i < columns.size(); ++i) line += "  " + pad_left(columns[i], widths[i]);
    line += "  " + pad_left("Delta", delta_width);
    out << strip_trailing(line) << '\n';

    line = std::string(label_width, ' ');
    for (std::size_t i = 0; i < columns.size(); ++i) {
        bool is_input = iface.direction_of(columns[i]) == Direction::Input;
        line += "  " + pad_left(is_input ? "(in)" : "(out)", widths[i]);
    }
    out << strip_trailing(line) << '\n';

    std::size_t rule_width = label_width + delta_width + 2;
    for (std::size_t w : widths) rule_width += w + 2;
    out << std::string(rule_width, '-') << '\n';

    for (const auto& row : table.rows) {
        line = pad_right(row.rule_label, label_width);
        for (std::size_t i = 0; i < columns.size(); ++i) {
            line += "  " + pad_left(std::to_string(row.asserted(columns[i])), widths[i]);
        }
        line += "  " + pad_left(format_signed(row.delta), delta_width);
        out << line << '\n';
    }
    out << std::string(rule_width, '-') << '\n';
    out << pad_right("Total", rule_width - delta_width) << pad_left(format_signed(table.total), delta_width)
        << '\n';
    return out.str();
}

std::string render_puncture_report(const PunctureReport& report) {
    std::ostringstream out;
    out << "Punctures:\n";
    if (report.punctures.empty()) out << "  (none)\n";
    std::size_t width = 0;
    for (const auto& p : report.punctures) width = std::max(width, p.name.size());
    for (const auto& p : report.punctures) {
        out << "  " << pad_right(p.name, width) << "  " << pad_left(format_signed(p.pressure), 4);
        if (!p.referencing_statements.empty()) {
            out << "  [";
            for (std::size_t i = 0; i < p.referencing_statements.size(); ++i) {
                if (i > 0) out << ", ";
                out << p.referencing_statements[i];
            }
            out << ']';
        }
        out << '\n';
    }
    out << "Puncture total: " << format_signed(report.total) << '\n';
    return out.str();
}

std::string render_text(const AnalysisReport& report, const BlockInterface& iface) {
    std::ostringstream out;
    out << "Block: " << report.block << "\n\n";
    out << render_table(report.table, iface) << '\n';

    PunctureReport pr;
    pr.punctures = report.punctures;
    pr.total = report.balance.puncture_total;
    out << "Puncture source: " << to_string(report.puncture_source) << '\n';
    out << render_puncture_report(pr) << '\n';

    out << "Rule total: " << format_signed(report.balance.rule_total) << '\n';
    out << "Residual: " << format_signed(report.balance.residual) << '\n';
    out << "Verdict: " << verdict_label(report.balance.verdict) << '\n';
    return out.str();
}

std::string render_structured(const AnalysisReport& report) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["block"] = report.block;

    doc["signals"] = ordered_json::array();
    for (const auto& s : report.signals) {
        doc["signals"].push_back(ordered_json{{"name", s.name}, {"direction", std::string(to_string(s.direction))}});
    }

    doc["rules"] = ordered_json::array();
    for (const auto& row : report.table.rows) {
        ordered_json counts = ordered_json::object();
        for (const auto& [name, c] : row.signal_counts) {
            counts[name] = ordered_json{{"asserted", c.asserted}, {"negated", c.negated}};
        }
        doc["rules"].push_back(ordered_json{{"label", row.rule_label}, {"counts", counts}, {"delta", row.delta.value}});
    }
    doc["rule_total"] = report.balance.rule_total.value;

    doc["punctures"] = ordered_json::array();
    for (const auto& p : report.punctures) {
        doc["punctures"].push_back(
            ordered_json{{"name", p.name}, {"statements", p.referencing_statements}, {"pressure", p.pressure.value}});
    }
    doc["puncture_total"] = report.balance.puncture_total.value;
    doc["residual"] = report.balance.residual.value;
    doc["verdict"] = std::string(to_string(report.balance.verdict));
    doc["uncovered_signals"] = report.uncovered_signals;
    doc["unknown_atoms"] = report.unknown_atoms;
    doc["warnings"] = report.warnings;
    return doc.dump(2) + "\n";
}

std::string render_hierarchy(const AggregationResult& result) {
    std::ostringstream out;
    std::size_t width = 0;
    for (const auto& node : result.nodes) width = std::max(width, node.path.size());
    for (const auto& node : result.nodes) {
        out << pad_right(node.path, width) << "  L" << node.level << "  "
            << pad_right(node.kind == NodeKind::Unit ? "unit" : "block", 5) << "  "
            << pad_left(format_signed(node.value), 5);
        if (node.expected) {
            out << "  expect " << format_signed(*node.expected)
                << (node.matches_expectation() ? "  ok" : "  MISMATCH");
        }
        out << '\n';
    }
    out << "Root: " << format_signed(result.root) << '\n';
    return out.str();
}

}  // namespace covbal
