#pragma once

#include <string>
#include <vector>

#include "covbal/formula.hpp"
#include "covbal/hierarchy.hpp"
#include "covbal/interface.hpp"
#include "covbal/model.hpp"

namespace covbal {

enum class PunctureSource { None, Manual, Model };

std::string_view to_string(PunctureSource s);

/// Everything one block analysis produces. The balance numbers are copied
/// from block_balance, never recomputed.
struct AnalysisReport {
    std::string block;
    std::vector<InterfaceSignal> signals;
    RuleTable table;
    PunctureSource puncture_source = PunctureSource::None;
    std::vector<PunctureEntry> punctures;
    BalanceReport balance;
    std::vector<std::string> uncovered_signals;
    /// Sorted, de-duplicated across all rules.
    std::vector<std::string> unknown_atoms;
    std::vector<std::string> warnings;
};

/// Interface signals that no rule mentions, asserted or negated, in
/// declaration order.
std::vector<std::string> check_signal_coverage(const RuleSet& rules, const BlockInterface& iface);

/// Full analysis. With no model, pressures come from the interface's
/// `pressure` lines (missing ones count as 0 and are warned about).
AnalysisReport analyze_block(const RuleSet& rules, const BlockInterface& iface, const ModelAst* model = nullptr);

/// Fixed-width table: one row per rule, one column per interface signal
/// (inputs, then outputs), a Delta column and a total line.
std::string render_table(const RuleTable& table, const BlockInterface& iface);

/// Human-readable report: table, puncture pressures, residual and verdict.
std::string render_text(const AnalysisReport& report, const BlockInterface& iface);

/// JSON document with keys, in order: block, signals, rules, rule_total,
/// punctures, puncture_total, residual, verdict, uncovered_signals,
/// unknown_atoms, warnings. Output ends with a newline.
std::string render_structured(const AnalysisReport& report);

std::string render_puncture_report(const PunctureReport& report);

std::string render_hierarchy(const AggregationResult& result);

}  // namespace covbal
