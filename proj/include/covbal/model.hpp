#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "covbal/interface.hpp"
#include "covbal/variance.hpp"

namespace covbal {

enum class ExprKind {
    VarRef,      // x
    NextRef,     // next(x) on a right-hand side; references x
    Not,
    And,
    Or,
    Const,       // 0 | 1
    NondetSet,   // {0, 1}
    Case,        // case g1 : v1; ... esac
    IfThenElse,  // if c then a else b endif
};

/// Expression of the SMV subset. And/Or are n-ary like Formula; a Case keeps
/// its branches as alternating guard/value operands.
class Expr {
public:
    static Expr var(std::string name);
    static Expr next_of(std::string name);
    static Expr negation(Expr e);
    static Expr conjunction(std::vector<Expr> operands);
    static Expr disjunction(std::vector<Expr> operands);
    static Expr constant(int value);
    static Expr nondet(std::vector<int> values);
    static Expr case_of(std::vector<std::pair<Expr, Expr>> branches);
    static Expr if_then_else(Expr cond, Expr then_value, Expr else_value);

    ExprKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    int value() const noexcept { return value_; }
    const std::vector<Expr>& operands() const noexcept { return operands_; }

    std::size_t branch_count() const noexcept { return kind_ == ExprKind::Case ? operands_.size() / 2 : 0; }
    const Expr& guard(std::size_t i) const { return operands_.at(2 * i); }
    const Expr& branch_value(std::size_t i) const { return operands_.at(2 * i + 1); }

    friend bool operator==(const Expr&, const Expr&) = default;

private:
    Expr(ExprKind kind, std::string name, int value, std::vector<Expr> operands);

    ExprKind kind_;
    std::string name_;
    int value_ = 0;
    std::vector<Expr> operands_;
};

/// Names an expression reads, with next(x) counted as a read of x.
std::set<std::string, std::less<>> referenced_names(const Expr& e);

enum class StatementKind { Init, Next, Define };

struct Statement {
    StatementKind kind;
    std::string target;
    Expr value;

    /// "init(x)", "next(x)" or "define x".
    std::string describe() const;

    friend bool operator==(const Statement&, const Statement&) = default;
};

/// Parsed model. All variables are boolean; statements keep file order.
struct ModelAst {
    std::vector<std::string> variables;
    std::vector<Statement> statements;

    std::vector<const Statement*> defines() const;
    std::vector<const Statement*> assigns() const;
    bool is_define_target(std::string_view name) const;

    friend bool operator==(const ModelAst&, const ModelAst&) = default;
};

/// Throws ParseError for syntax errors and semantic violations (duplicate
/// init/next, undeclared names), reported at the offending token.
ModelAst parse_model(std::string_view text);

/// Checks the same semantic rules as parse_model on a constructed AST.
/// Throws ValidationError.
void validate_model(const ModelAst& m);

std::string pretty_print(const Expr& e);
std::string pretty_print(const ModelAst& m);

struct VariableClassification {
    /// Model names that are interface signals.
    std::vector<std::string> boundary;
    /// Everything else: variables first, then define targets, declaration order.
    std::vector<std::string> punctures;
    /// Interface signals the model never declares or defines.
    std::vector<std::string> missing_signals;
    /// Punctures named by the interface that the model does not have.
    std::vector<std::string> missing_declared_punctures;
    /// Discovered punctures the interface does not list (only when it lists some).
    std::vector<std::string> undeclared_punctures;
};

VariableClassification classify_variables(const ModelAst& m, const BlockInterface& iface);

struct PunctureEntry {
    std::string name;
    /// Statements whose right-hand side reads the puncture, in file order.
    std::vector<std::string> referencing_statements;
    Variance pressure;
};

struct PunctureReport {
    std::vector<PunctureEntry> punctures;
    Variance total;
    std::vector<std::string> warnings;
};

/// -(number of statements whose right-hand side references the puncture).
/// Each statement counts once. Throws std::invalid_argument if `puncture`
/// is not a puncture of the model under `iface`.
Variance puncture_pressure(const ModelAst& m, std::string_view puncture, const BlockInterface& iface);

PunctureReport model_puncture_total(const ModelAst& m, const BlockInterface& iface);

}  // namespace covbal
