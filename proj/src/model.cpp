#include "covbal/model.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

#include "covbal/errors.hpp"
#include "lexer.hpp"

namespace covbal {

using detail::Lexer;
using detail::Token;
using detail::TokenKind;

Expr::Expr(ExprKind kind, std::string name, int value, std::vector<Expr> operands)
    : kind_(kind), name_(std::move(name)), value_(value), operands_(std::move(operands)) {}

Expr Expr::var(std::string name) {
    if (!is_identifier(name)) throw std::invalid_argument("not an identifier: '" + name + "'");
    return Expr(ExprKind::VarRef, std::move(name), 0, {});
}

Expr Expr::next_of(std::string name) {
    if (!is_identifier(name)) throw std::invalid_argument("not an identifier: '" + name + "'");
    return Expr(ExprKind::NextRef, std::move(name), 0, {});
}

Expr Expr::negation(Expr e) { return Expr(ExprKind::Not, {}, 0, {std::move(e)}); }

Expr Expr::conjunction(std::vector<Expr> operands) {
    if (operands.size() < 2) throw std::invalid_argument("conjunction needs at least two operands");
    return Expr(ExprKind::And, {}, 0, std::move(operands));
}

Expr Expr::disjunction(std::vector<Expr> operands) {
    if (operands.size() < 2) throw std::invalid_argument("disjunction needs at least two operands");
    return Expr(ExprKind::Or, {}, 0, std::move(operands));
}

Expr Expr::constant(int value) {
    if (value != 0 && value != 1) throw std::invalid_argument("boolean constants are 0 or 1");
    return Expr(ExprKind::Const, {}, value, {});
}

Expr Expr::nondet(std::vector<int> values) {
    if (values.empty()) throw std::invalid_argument("nondeterministic set is empty");
    std::vector<Expr> operands;
    for (int v : values) operands.push_back(constant(v));
    return Expr(ExprKind::NondetSet, {}, 0, std::move(operands));
}

Expr Expr::case_of(std::vector<std::pair<Expr, Expr>> branches) {
    if (branches.empty()) throw std::invalid_argument("case needs at least one branch");
    std::vector<Expr> operands;
    operands.reserve(branches.size() * 2);
    for (auto& [guard, value] : branches) {
        operands.push_back(std::move(guard));
        operands.push_back(std::move(value));
    }
    return Expr(ExprKind::Case, {}, 0, std::move(operands));
}

Expr Expr::if_then_else(Expr cond, Expr then_value, Expr else_value) {
    return Expr(ExprKind::IfThenElse, {}, 0, {std::move(cond), std::move(then_value), std::move(else_value)});
}

namespace {

void collect_names(const Expr& e, std::set<std::string, std::less<>>& out) {
    if (e.kind() == ExprKind::VarRef || e.kind() == ExprKind::NextRef) out.insert(e.name());
    for (const Expr& child : e.operands()) collect_names(child, out);
}

}  // namespace

std::set<std::string, std::less<>> referenced_names(const Expr& e) {
    std::set<std::string, std::less<>> out;
    collect_names(e, out);
    return out;
}

std::string Statement::describe() const {
    switch (kind) {
        case StatementKind::Init:
            return "init(" + target + ")";
        case StatementKind::Next:
            return "next(" + target + ")";
        case StatementKind::Define:
            return "define " + target;
    }
    return target;
}

std::vector<const Statement*> ModelAst::defines() const {
    std::vector<const Statement*> out;
    for (const auto& s : statements) {
        if (s.kind == StatementKind::Define) out.push_back(&s);
    }
    return out;
}

std::vector<const Statement*> ModelAst::assigns() const {
    std::vector<const Statement*> out;
    for (const auto& s : statements) {
        if (s.kind != StatementKind::Define) out.push_back(&s);
    }
    return out;
}

bool ModelAst::is_define_target(std::string_view name) const {
    return std::any_of(statements.begin(), statements.end(), [&](const Statement& s) {
        return s.kind == StatementKind::Define && s.target == name;
    });
}

namespace {

constexpr std::array<std::string_view, 11> kSymbols = {":=", ":", ";", ",", "(", ")", "{", "}", "!", "&", "|"};

bool is_model_keyword(std::string_view w) {
    static constexpr std::array<std::string_view, 12> words = {"var",  "assign", "init", "next", "define", "boolean",
                                                               "case", "esac",   "if",   "then", "else",   "endif"};
    return std::find(words.begin(), words.end(), w) != words.end();
}

class ModelParser {
public:
    explicit ModelParser(std::string_view text) : lex_(text, kSymbols) {}

    ModelAst parse() {
        lex_.expect_identifier("var");
        do {
            parse_vardecl();
        } while (peek_plain_identifier());

        while (!lex_.at_end()) {
            if (lex_.accept_identifier("assign")) continue;
            parse_item();
        }

        for (const auto& [name, at] : references_) {
            if (!declared(name)) lex_.fail(at, "reference to undeclared name '" + name + "'");
        }
        return std::move(model_);
    }

private:
    bool peek_plain_identifier() {
        const Token tok = lex_.peek();
        return tok.kind == TokenKind::Identifier && !is_model_keyword(tok.text);
    }

    Token expect_name(std::string_view what) {
        if (!peek_plain_identifier()) lex_.fail_expected(lex_.peek(), std::string(what));
        return lex_.next();
    }

    bool declared(const std::string& name) const {
        return variables_.contains(name) || define_targets_.contains(name);
    }

    void parse_vardecl() {
        do {
            Token id = expect_name("variable name");
            if (!variables_.insert(id.text).second) lex_.fail(id, "variable '" + id.text + "' declared twice");
            model_.variables.push_back(id.text);
        } while (lex_.accept_symbol(","));
        lex_.expect_symbol(":");
        if (!lex_.accept_identifier("boolean")) lex_.fail_expected(lex_.peek(), "'boolean' (the only supported type)");
        lex_.expect_symbol(";");
    }

    void parse_item() {
        const Token tok = lex_.peek();
        StatementKind kind;
        if (lex_.accept_identifier("init")) {
            kind = StatementKind::Init;
        } else if (lex_.accept_identifier("next")) {
            kind = StatementKind::Next;
        } else if (lex_.accept_identifier("define")) {
            kind = StatementKind::Define;
        } else if (lex_.peek_identifier("var")) {
            lex_.fail(tok, "only one 'var' section is allowed");
        } else {
            lex_.fail_expected(tok, "'init', 'next', 'define' or 'assign'");
        }

        Token target;
        if (kind == StatementKind::Define) {
            target = expect_name("define target");
            if (!define_targets_.insert(target.text).second) {
                lex_.fail(target, "'" + target.text + "' defined twice");
            }
        } else {
            lex_.expect_symbol("(");
            target = expect_name("variable name");
            lex_.expect_symbol(")");
            if (!variables_.contains(target.text)) {
                lex_.fail(target, "assignment to undeclared variable '" + target.text + "'");
            }
            auto& seen = kind == StatementKind::Init ? inits_ : nexts_;
            if (!seen.insert(target.text).second) {
                lex_.fail(target, std::string(kind == StatementKind::Init ? "init" : "next") + "(" + target.text +
                                      ") assigned twice");
            }
        }
        lex_.expect_symbol(":=");
        Expr value = parse_expr();
        lex_.expect_symbol(";");
        model_.statements.push_back(Statement{kind, target.text, std::move(value)});
    }

    Expr parse_expr() {
        if (lex_.peek_identifier("case")) return parse_case();
        if (lex_.peek_identifier("if")) return parse_if();
        return parse_or();
    }

    Expr parse_case() {
        lex_.expect_identifier("case");
        std::vector<std::pair<Expr, Expr>> branches;
        do {
            Expr guard = parse_expr();
            lex_.expect_symbol(":");
            Expr value = parse_expr();
            lex_.expect_symbol(";");
            branches.emplace_back(std::move(guard), std::move(value));
        } while (!lex_.peek_identifier("esac") && !lex_.at_end());
        lex_.expect_identifier("esac");
        return Expr::case_of(std::move(branches));
    }

    Expr parse_if() {
        lex_.expect_identifier("if");
        Expr cond = parse_expr();
        lex_.expect_identifier("then");
        Expr then_value = parse_expr();
        lex_.expect_identifier("else");
        Expr else_value = parse_expr();
        lex_.expect_identifier("endif");
        return Expr::if_then_else(std::move(cond), std::move(then_value), std::move(else_value));
    }

    Expr parse_or() {
        std::vector<Expr> operands;
        operands.push_back(parse_and());
        while (lex_.accept_symbol("|")) operands.push_back(parse_and());
        if (operands.size() == 1) return std::move(operands.front());
        return Expr::disjunction(std::move(operands));
    }

    Expr parse_and() {
        std::vector<Expr> operands;
        operands.push_back(parse_unary());
        while (lex_.accept_symbol("&")) operands.push_back(parse_unary());
        if (operands.size() == 1) return std::move(operands.front());
        return Expr::conjunction(std::move(operands));
    }

    int parse_constant() {
        Token number = lex_.expect_number();
        if (number.text != "0" && number.text != "1") {
            lex_.fail(number, "only the boolean constants 0 and 1 are supported");
        }
        return number.text == "1" ? 1 : 0;
    }

    Expr parse_unary() {
        const Token tok = lex_.peek();
        if (lex_.accept_symbol("!")) return Expr::negation(parse_unary());
        if (tok.kind == TokenKind::Symbol && tok.text == "(") {
            Token open = lex_.next();
            Expr inner = parse_expr();
            if (!lex_.peek_symbol(")")) {
                lex_.fail(lex_.peek(), "unbalanced '(' opened at " + std::to_string(open.line) + ":" +
                                           std::to_string(open.column) + ": expected ')', found " +
                                           detail::describe(lex_.peek()));
            }
            lex_.next();
            return inner;
        }
        if (lex_.accept_symbol("{")) {
            std::vector<int> values;
            do {
                values.push_back(parse_constant());
            } while (lex_.accept_symbol(","));
            lex_.expect_symbol("}");
            return Expr::nondet(std::move(values));
        }
        if (tok.kind == TokenKind::Number) return Expr::constant(parse_constant());
        if (lex_.accept_identifier("next")) {
            lex_.expect_symbol("(");
            Token id = expect_name("variable name");
            lex_.expect_symbol(")");
            if (!variables_.contains(id.text)) lex_.fail(id, "next() of undeclared variable '" + id.text + "'");
            return Expr::next_of(id.text);
        }
        if (peek_plain_identifier()) {
            Token id = lex_.next();
            references_.emplace_back(id.text, id);
            return Expr::var(id.text);
        }
        lex_.fail_expected(tok, "expression");
    }

    Lexer lex_;
    ModelAst model_;
    std::set<std::string, std::less<>> variables_;
    std::set<std::string, std::less<>> define_targets_;
    std::set<std::string, std::less<>> inits_;
    std::set<std::string, std::less<>> nexts_;
    std::vector<std::pair<std::string, Token>> references_;
};

bool needs_group(const Expr& operand, ExprKind parent) {
    switch (operand.kind()) {
        case ExprKind::Case:
        case ExprKind::IfThenElse:
        case ExprKind::Or:
            return true;
        case ExprKind::And:
            return parent != ExprKind::Or;
        default:
            return false;
    }
}

void print_into(const Expr& e, std::string& out, const std::string& indent);

void print_operand(const Expr& e, ExprKind parent, std::string& out, const std::string& indent) {
    bool group = needs_group(e, parent);
    if (group) out += '(';
    print_into(e, out, indent);
    if (group) out += ')';
}

void print_into(const Expr& e, std::string& out, const std::string& indent) {
    const auto& ops = e.operands();
    switch (e.kind()) {
        case ExprKind::VarRef:
            out += e.name();
            return;
        case ExprKind::NextRef:
            out += "next(" + e.name() + ")";
            return;
        case ExprKind::Const:
            out += std::to_string(e.value());
            return;
        case ExprKind::NondetSet:
            out += '{';
            for (std::size_t i = 0; i < ops.size(); ++i) {
                if (i > 0) out += ", ";
                out += std::to_string(ops[i].value());
            }
            out += '}';
            return;
        case ExprKind::Not:
            out += '!';
            print_operand(ops[0], ExprKind::Not, out, indent);
            return;
        case ExprKind::And:
        case ExprKind::Or:
            for (std::size_t i = 0; i < ops.size(); ++i) {
                if (i > 0) out += e.kind() == ExprKind::And ? " & " : " | ";
                print_operand(ops[i], e.kind(), out, indent);
            }
            return;
        case ExprKind::Case: {
            const std::string inner = indent + "  ";
            out += "case\n";
            for (std::size_t i = 0; i < e.branch_count(); ++i) {
                out += inner;
                print_into(e.guard(i), out, inner);
                out += " : ";
                print_into(e.branch_value(i), out, inner);
                out += ";\n";
            }
            out += indent + "esac";
            return;
        }
        case ExprKind::IfThenElse:
            out += "if ";
            print_into(ops[0], out, indent);
            out += " then ";
            print_into(ops[1], out, indent);
            out += " else ";
            print_into(ops[2], out, indent);
            out += " endif";
            return;
    }
}

}  // namespace

ModelAst parse_model(std::string_view text) { return ModelParser(text).parse(); }

void validate_model(const ModelAst& m) {
    if (m.variables.empty()) throw ValidationError("model declares no variables");
    std::set<std::string, std::less<>> variables;
    std::set<std::string, std::less<>> defines;
    for (const auto& v : m.variables) {
        if (!is_identifier(v) || is_model_keyword(v)) throw ValidationError("invalid variable name '" + v + "'");
        if (!variables.insert(v).second) throw ValidationError("variable '" + v + "' declared twice");
    }
    std::set<std::string, std::less<>> inits;
    std::set<std::string, std::less<>> nexts;
    for (const auto& s : m.statements) {
        if (s.kind == StatementKind::Define) {
            if (!is_identifier(s.target) || is_model_keyword(s.target)) {
                throw ValidationError("invalid define target '" + s.target + "'");
            }
            if (!defines.insert(s.target).second) throw ValidationError("'" + s.target + "' defined twice");
            continue;
        }
        if (!variables.contains(s.target)) {
            throw ValidationError("assignment to undeclared variable '" + s.target + "'");
        }
        auto& seen = s.kind == StatementKind::Init ? inits : nexts;
        if (!seen.insert(s.target).second) throw ValidationError(s.describe() + " assigned twice");
    }
    for (const auto& s : m.statements) {
        for (const auto& name : referenced_names(s.value)) {
            if (!variables.contains(name) && !defines.contains(name)) {
                throw ValidationError(s.describe() + " references undeclared name '" + name + "'");
            }
        }
    }
}

std::string pretty_print(const Expr& e) {
    std::string out;
    print_into(e, out, "");
    return out;
}

std::string pretty_print(const ModelAst& m) {
    std::string out = "var\n  ";
    for (std::size_t i = 0; i < m.variables.size(); ++i) {
        if (i > 0) out += ", ";
        out += m.variables[i];
    }
    out += " : boolean;\n";
    if (m.statements.empty()) return out;
    out += "assign\n";
    for (const auto& s : m.statements) {
        out += "  ";
        out += s.kind == StatementKind::Define ? "define " + s.target : s.describe();
        out += " := ";
        print_into(s.value, out, "  ");
        out += ";\n";
    }
    return out;
}

VariableClassification classify_variables(const ModelAst& m, const BlockInterface& iface) {
    std::vector<std::string> names = m.variables;
    for (const Statement* d : m.defines()) {
        if (std::find(names.begin(), names.end(), d->target) == names.end()) names.push_back(d->target);
    }

    VariableClassification out;
    for (const auto& name : names) {
        (iface.direction_of(name) ? out.boundary : out.punctures).push_back(name);
    }
    for (const auto& signal : iface.signals()) {
        if (std::find(names.begin(), names.end(), signal.name) == names.end()) {
            out.missing_signals.push_back(signal.name);
        }
    }
    for (const auto& declared : iface.punctures()) {
        if (std::find(out.punctures.begin(), out.punctures.end(), declared) == out.punctures.end()) {
            out.missing_declared_punctures.push_back(declared);
        }
    }
    if (!iface.punctures().empty()) {
        for (const auto& p : out.punctures) {
            if (!iface.is_puncture(p)) out.undeclared_punctures.push_back(p);
        }
    }
    return out;
}

namespace {

std::vector<std::string> referencing_statements(const ModelAst& m, std::string_view puncture) {
    std::vector<std::string> out;
    for (const auto& s : m.statements) {
        if (referenced_names(s.value).contains(puncture)) out.push_back(s.describe());
    }
    return out;
}

}  // namespace

Variance puncture_pressure(const ModelAst& m, std::string_view puncture, const BlockInterface& iface) {
    const auto classes = classify_variables(m, iface);
    if (std::find(classes.punctures.begin(), classes.punctures.end(), puncture) == classes.punctures.end()) {
        throw std::invalid_argument("'" + std::string(puncture) + "' is not a puncture of this model");
    }
    return Variance{-static_cast<std::int64_t>(referencing_statements(m, puncture).size())};
}

PunctureReport model_puncture_total(const ModelAst& m, const BlockInterface& iface) {
    const auto classes = classify_variables(m, iface);
    PunctureReport report;
    for (const auto& name : classes.punctures) {
        PunctureEntry entry;
        entry.name = name;
        entry.referencing_statements = referencing_statements(m, name);
        entry.pressure = Variance{-static_cast<std::int64_t>(entry.referencing_statements.size())};
        report.total += entry.pressure;
        report.punctures.push_back(std::move(entry));
    }
    for (const auto& s : classes.missing_signals) {
        report.warnings.push_back("interface signal '" + s + "' does not appear in the model");
    }
    for (const auto& p : classes.missing_declared_punctures) {
        report.warnings.push_back("declared puncture '" + p + "' is not an internal variable of the model");
    }
    for (const auto& p : classes.undeclared_punctures) {
        report.warnings.push_back("model variable '" + p + "' is an undeclared puncture");
    }
    return report;
}

}  // namespace covbal
