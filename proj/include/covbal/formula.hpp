#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace covbal {

enum class FormulaKind {
    Atom,
    Not,
    And,
    Or,
    Implies,
    AlwaysGlobally,  // AG f
    AlwaysNext,      // AX f
    AlwaysFinally,   // AF f
    WeakUntil,       // A[f W g]
};

/// CTL formula tree restricted to the operators rule files may use.
///
/// And/Or are n-ary (at least two operands). A chain `a & b & c` parses into
/// one And node with three operands; an explicitly parenthesised operand stays
/// a separate node, so printing and re-parsing preserves the exact shape.
class Formula {
public:
    static Formula atom(std::string name);
    static Formula negation(Formula f);
    static Formula conjunction(std::vector<Formula> operands);
    static Formula disjunction(std::vector<Formula> operands);
    static Formula implies(Formula antecedent, Formula consequent);
    static Formula always_globally(Formula f);
    static Formula always_next(Formula f);
    static Formula always_finally(Formula f);
    static Formula weak_until(Formula hold, Formula release);

    FormulaKind kind() const noexcept { return kind_; }
    /// Signal name; empty unless kind() == Atom.
    const std::string& name() const noexcept { return name_; }
    const std::vector<Formula>& operands() const noexcept { return operands_; }

    bool is_atom() const noexcept { return kind_ == FormulaKind::Atom; }

    friend bool operator==(const Formula&, const Formula&) = default;

private:
    Formula(FormulaKind kind, std::string name, std::vector<Formula> operands);

    FormulaKind kind_;
    std::string name_;
    std::vector<Formula> operands_;
};

struct Rule {
    std::string label;
    Formula body;

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// Rules in file order; labels are unique.
struct RuleSet {
    std::vector<Rule> rules;

    bool empty() const noexcept { return rules.empty(); }
    std::size_t size() const noexcept { return rules.size(); }
};

struct PolarityCount {
    int asserted = 0;
    int negated = 0;

    int total() const noexcept { return asserted + negated; }
    friend bool operator==(const PolarityCount&, const PolarityCount&) = default;
};

/// Per-signal occurrence counts, keyed by atom name.
using OccurrenceCount = std::map<std::string, PolarityCount, std::less<>>;

bool is_identifier(std::string_view text);
/// Words the rule grammar reserves (AG, AX, AF, A, W); these cannot be atoms.
bool is_formula_keyword(std::string_view text);

/// Throws ParseError on malformed input.
Formula parse_formula(std::string_view text);

/// Parses a whole rule file: `label : formula ;` repeated, `--` comments.
/// Throws ParseError, including for a duplicate label.
RuleSet parse_rules(std::string_view text);

/// An atom is asserted when it sits under an even number of negations.
/// Implication and temporal operators leave polarity alone.
OccurrenceCount count_occurrences(const Formula& f);

/// Canonical spelling that parse_formula maps back to the same tree.
std::string pretty_print(const Formula& f);
std::string pretty_print(const RuleSet& rules);

}  // namespace covbal
