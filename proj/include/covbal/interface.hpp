#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covbal/formula.hpp"
#include "covbal/variance.hpp"

namespace covbal {

enum class Direction { Input, Output };

std::string_view to_string(Direction d);

struct InterfaceSignal {
    std::string name;
    Direction direction;

    friend bool operator==(const InterfaceSignal&, const InterfaceSignal&) = default;
};

/// Boundary of a block: the signals it exchanges with its environment and the
/// punctures (internal state) it hides. Signal order is declaration order.
class BlockInterface {
public:
    /// Throws ValidationError on duplicate names, overlap between signals and
    /// punctures, invalid identifiers, or an empty signal list.
    BlockInterface(std::string block_name, std::vector<InterfaceSignal> signals,
                   std::vector<std::string> punctures = {},
                   std::map<std::string, Variance, std::less<>> manual_pressures = {});

    const std::string& block_name() const noexcept { return block_name_; }
    const std::vector<InterfaceSignal>& signals() const noexcept { return signals_; }
    const std::vector<std::string>& punctures() const noexcept { return punctures_; }

    /// `pressure <p> = <n>` lines, used when no model is analysed.
    const std::map<std::string, Variance, std::less<>>& manual_pressures() const noexcept {
        return manual_pressures_;
    }

    std::optional<Direction> direction_of(std::string_view signal) const;
    bool is_puncture(std::string_view name) const;

    std::vector<std::string> inputs() const;
    std::vector<std::string> outputs() const;

    /// Inputs first, then outputs, each in declaration order.
    std::vector<std::string> column_order() const;

    /// Same block with every Input/Output swapped.
    BlockInterface with_directions_swapped() const;

private:
    std::string block_name_;
    std::vector<InterfaceSignal> signals_;
    std::vector<std::string> punctures_;
    std::map<std::string, Variance, std::less<>> manual_pressures_;
};

/// Parses the line-oriented interface format:
///
///     block <name>
///     inputs  <id> [, <id>]*
///     outputs <id> [, <id>]*
///     punctures [<id> [, <id>]*]
///     pressure <puncture-id> = <signed integer>
BlockInterface parse_interface(std::string_view text);

enum class Orientation {
    OutwardNormal,  // +n, leaving the block
    InwardNormal,   // -n, entering the block
};

/// A message (+-n; s1, ..., sk). Never empty.
class Message {
public:
    Message(Orientation orientation, std::vector<std::string> signals);

    Orientation orientation() const noexcept { return orientation_; }
    const std::vector<std::string>& signals() const noexcept { return signals_; }

private:
    Orientation orientation_;
    std::vector<std::string> signals_;
};

/// Information pressure of one message: +k leaving the block, -k entering.
Variance message_measure(const Message& m);

/// Sum of the message measures; handles mixed punctures.
Variance puncture_measure(std::span<const Message> messages);

struct RuleVarianceRow {
    std::string rule_label;
    /// One entry per interface signal, in BlockInterface::column_order().
    std::vector<std::pair<std::string, PolarityCount>> signal_counts;
    Variance delta;
    /// Atoms that are neither interface signals nor punctures.
    std::vector<std::string> unknown_atoms;
    /// Atoms naming punctures; they contribute nothing.
    std::vector<std::string> puncture_atoms;

    int asserted(std::string_view signal) const;
};

/// delta = asserted output occurrences - asserted input occurrences.
RuleVarianceRow rule_variance(const Rule& rule, const BlockInterface& iface);

struct RuleTable {
    std::vector<RuleVarianceRow> rows;
    Variance total;
};

RuleTable set_variance(const RuleSet& rules, const BlockInterface& iface);

enum class Verdict { Balanced, PositiveImbalance, NegativeImbalance };

std::string_view to_string(Verdict v);
/// Pure function of the residual's sign.
Verdict verdict_for(Variance residual);

struct BalanceReport {
    Variance rule_total;
    Variance puncture_total;
    Variance residual;
    Verdict verdict = Verdict::Balanced;
};

/// residual = rule_total + sum of puncture totals. A non-zero residual flags
/// redundancy (positive) or incompleteness (negative); zero certifies nothing.
BalanceReport block_balance(Variance rule_total, std::span<const Variance> puncture_totals);

}  // namespace covbal
