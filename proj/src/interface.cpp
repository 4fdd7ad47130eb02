#include "covbal/interface.hpp"

#include <array>
#include <set>

#include "covbal/errors.hpp"
#include "lexer.hpp"

namespace covbal {

using detail::Lexer;
using detail::Token;
using detail::TokenKind;

std::string_view to_string(Direction d) { return d == Direction::Input ? "input" : "output"; }

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Balanced:
            return "balanced";
        case Verdict::PositiveImbalance:
            return "positive_imbalance";
        case Verdict::NegativeImbalance:
            return "negative_imbalance";
    }
    return "balanced";
}

std::string format_signed(Variance v) {
    if (v.value > 0) return "+" + std::to_string(v.value);
    return std::to_string(v.value);
}

BlockInterface::BlockInterface(std::string block_name, std::vector<InterfaceSignal> signals,
                               std::vector<std::string> punctures,
                               std::map<std::string, Variance, std::less<>> manual_pressures)
    : block_name_(std::move(block_name)),
      signals_(std::move(signals)),
      punctures_(std::move(punctures)),
      manual_pressures_(std::move(manual_pressures)) {
    if (!is_identifier(block_name_)) throw ValidationError("invalid block name '" + block_name_ + "'");
    if (signals_.empty()) throw ValidationError("block '" + block_name_ + "' declares no boundary signals");
    std::set<std::string, std::less<>> names;
    for (const auto& s : signals_) {
        if (!is_identifier(s.name)) throw ValidationError("invalid signal name '" + s.name + "'");
        if (!names.insert(s.name).second) throw ValidationError("duplicate signal '" + s.name + "'");
    }
    for (const auto& p : punctures_) {
        if (!is_identifier(p)) throw ValidationError("invalid puncture name '" + p + "'");
        if (!names.insert(p).second) {
            throw ValidationError("puncture '" + p + "' duplicates another signal or puncture name");
        }
    }
    for (const auto& [name, value] : manual_pressures_) {
        if (!is_puncture(name)) throw ValidationError("pressure given for undeclared puncture '" + name + "'");
    }
}

std::optional<Direction> BlockInterface::direction_of(std::string_view signal) const {
    for (const auto& s : signals_) {
        if (s.name == signal) return s.direction;
    }
    return std::nullopt;
}

bool BlockInterface::is_puncture(std::string_view name) const {
    for (const auto& p : punctures_) {
        if (p == name) return true;
    }
    return false;
}

std::vector<std::string> BlockInterface::inputs() const {
    std::vector<std::string> out;
    for (const auto& s : signals_) {
        if (s.direction == Direction::Input) out.push_back(s.name);
    }
    return out;
}

std::vector<std::string> BlockInterface::outputs() const {
    std::vector<std::string> out;
    for (const auto& s : signals_) {
        if (s.direction == Direction::Output) out.push_back(s.name);
    }
    return out;
}

std::vector<std::string> BlockInterface::column_order() const {
    std::vector<std::string> out = inputs();
    for (auto& name : outputs()) out.push_back(std::move(name));
    return out;
}

BlockInterface BlockInterface::with_directions_swapped() const {
    std::vector<InterfaceSignal> swapped = signals_;
    for (auto& s : swapped) {
        s.direction = s.direction == Direction::Input ? Direction::Output : Direction::Input;
    }
    return BlockInterface(block_name_, std::move(swapped), punctures_, manual_pressures_);
}

namespace {

constexpr std::array<std::string_view, 4> kSymbols = {",", "=", "-", "+"};

bool is_interface_keyword(std::string_view word) {
    return word == "block" || word == "inputs" || word == "outputs" || word == "punctures" || word == "pressure";
}

class InterfaceParser {
public:
    explicit InterfaceParser(std::string_view text) : lex_(text, kSymbols) {}

    BlockInterface parse() {
        Token first = lex_.peek();
        if (!lex_.accept_identifier("block")) lex_.fail_expected(first, "'block <name>'");
        Token name = expect_name("block name");

        while (!lex_.at_end()) {
            Token keyword = lex_.peek();
            if (lex_.accept_identifier("inputs")) {
                read_signals(Direction::Input);
            } else if (lex_.accept_identifier("outputs")) {
                read_signals(Direction::Output);
            } else if (lex_.accept_identifier("punctures")) {
                read_punctures();
            } else if (lex_.accept_identifier("pressure")) {
                read_pressure();
            } else if (lex_.peek_identifier("block")) {
                lex_.fail(keyword, "only one 'block' declaration is allowed per interface file");
            } else {
                lex_.fail_expected(keyword, "'inputs', 'outputs', 'punctures' or 'pressure'");
            }
        }
        if (signals_.empty()) {
            throw ValidationError("block '" + name.text + "' declares no boundary signals");
        }
        for (const auto& [puncture, at] : pressure_sites_) {
            if (!puncture_set_.contains(puncture)) {
                lex_.fail(at, "pressure given for undeclared puncture '" + puncture + "'");
            }
        }
        return BlockInterface(name.text, std::move(signals_), std::move(punctures_), std::move(pressures_));
    }

private:
    Token expect_name(std::string_view what) {
        const Token tok = lex_.peek();
        if (tok.kind != TokenKind::Identifier || is_interface_keyword(tok.text)) {
            lex_.fail_expected(tok, std::string(what));
        }
        return lex_.next();
    }

    void claim(const Token& tok) {
        if (!names_.insert(tok.text).second) lex_.fail(tok, "duplicate signal or puncture name '" + tok.text + "'");
    }

    void read_signals(Direction dir) {
        do {
            Token id = expect_name("signal name");
            claim(id);
            signals_.push_back(InterfaceSignal{id.text, dir});
        } while (lex_.accept_symbol(","));
    }

    void read_punctures() {
        const Token tok = lex_.peek();
        if (tok.kind != TokenKind::Identifier || is_interface_keyword(tok.text)) return;
        do {
            Token id = expect_name("puncture name");
            claim(id);
            punctures_.push_back(id.text);
            puncture_set_.insert(id.text);
        } while (lex_.accept_symbol(","));
    }

    void read_pressure() {
        Token id = expect_name("puncture name");
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
            lex_.fail(number, "pressure value out of range");
        }
        if (!pressures_.emplace(id.text, Variance{negative ? -value : value}).second) {
            lex_.fail(id, "duplicate pressure for puncture '" + id.text + "'");
        }
        pressure_sites_.emplace_back(id.text, id);
    }

    Lexer lex_;
    std::vector<InterfaceSignal> signals_;
    std::vector<std::string> punctures_;
    std::set<std::string, std::less<>> names_;
    std::set<std::string, std::less<>> puncture_set_;
    std::map<std::string, Variance, std::less<>> pressures_;
    std::vector<std::pair<std::string, Token>> pressure_sites_;
};

}  // namespace

BlockInterface parse_interface(std::string_view text) { return InterfaceParser(text).parse(); }

Message::Message(Orientation orientation, std::vector<std::string> signals)
    : orientation_(orientation), signals_(std::move(signals)) {
    if (signals_.empty()) throw std::invalid_argument("a message carries at least one signal");
}

Variance message_measure(const Message& m) {
    auto k = static_cast<std::int64_t>(m.signals().size());
    return Variance{m.orientation() == Orientation::OutwardNormal ? k : -k};
}

Variance puncture_measure(std::span<const Message> messages) {
    Variance total;
    for (const Message& m : messages) total += message_measure(m);
    return total;
}

int RuleVarianceRow::asserted(std::string_view signal) const {
    for (const auto& [name, count] : signal_counts) {
        if (name == signal) return count.asserted;
    }
    return 0;
}

RuleVarianceRow rule_variance(const Rule& rule, const BlockInterface& iface) {
    RuleVarianceRow row;
    row.rule_label = rule.label;
    const OccurrenceCount counts = count_occurrences(rule.body);

    for (const std::string& signal : iface.column_order()) {
        auto it = counts.find(signal);
        PolarityCount c = it == counts.end() ? PolarityCount{} : it->second;
        row.signal_counts.emplace_back(signal, c);
        if (iface.direction_of(signal) == Direction::Output) {
            row.delta += Variance{c.asserted};
        } else {
            row.delta -= Variance{c.asserted};
        }
    }
    for (const auto& [atom, count] : counts) {
        if (iface.direction_of(atom)) continue;
        (iface.is_puncture(atom) ? row.puncture_atoms : row.unknown_atoms).push_back(atom);
    }
    return row;
}

RuleTable set_variance(const RuleSet& rules, const BlockInterface& iface) {
    RuleTable table;
    table.rows.reserve(rules.size());
    for (const Rule& rule : rules.rules) {
        table.rows.push_back(rule_variance(rule, iface));
        table.total += table.rows.back().delta;
    }
    return table;
}

Verdict verdict_for(Variance residual) {
    if (residual.value > 0) return Verdict::PositiveImbalance;
    if (residual.value < 0) return Verdict::NegativeImbalance;
    return Verdict::Balanced;
}

BalanceReport block_balance(Variance rule_total, std::span<const Variance> puncture_totals) {
    BalanceReport report;
    report.rule_total = rule_total;
    for (Variance p : puncture_totals) report.puncture_total += p;
    report.residual = report.rule_total + report.puncture_total;
    report.verdict = verdict_for(report.residual);
    return report;
}

}  // namespace covbal
