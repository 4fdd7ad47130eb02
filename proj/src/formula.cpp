#include "covbal/formula.hpp"

#include <array>
#include <cctype>
#include <set>
#include <utility>

#include "covbal/errors.hpp"
#include "lexer.hpp"

namespace covbal {

using detail::Lexer;
using detail::Token;
using detail::TokenKind;

Formula::Formula(FormulaKind kind, std::string name, std::vector<Formula> operands)
    : kind_(kind), name_(std::move(name)), operands_(std::move(operands)) {}

Formula Formula::atom(std::string name) {
    if (!is_identifier(name)) throw std::invalid_argument("not a signal identifier: '" + name + "'");
    return Formula(FormulaKind::Atom, std::move(name), {});
}

Formula Formula::negation(Formula f) { return Formula(FormulaKind::Not, {}, {std::move(f)}); }

Formula Formula::conjunction(std::vector<Formula> operands) {
    if (operands.size() < 2) throw std::invalid_argument("conjunction needs at least two operands");
    return Formula(FormulaKind::And, {}, std::move(operands));
}

Formula Formula::disjunction(std::vector<Formula> operands) {
    if (operands.size() < 2) throw std::invalid_argument("disjunction needs at least two operands");
    return Formula(FormulaKind::Or, {}, std::move(operands));
}

Formula Formula::implies(Formula antecedent, Formula consequent) {
    return Formula(FormulaKind::Implies, {}, {std::move(antecedent), std::move(consequent)});
}

Formula Formula::always_globally(Formula f) { return Formula(FormulaKind::AlwaysGlobally, {}, {std::move(f)}); }
Formula Formula::always_next(Formula f) { return Formula(FormulaKind::AlwaysNext, {}, {std::move(f)}); }
Formula Formula::always_finally(Formula f) { return Formula(FormulaKind::AlwaysFinally, {}, {std::move(f)}); }

Formula Formula::weak_until(Formula hold, Formula release) {
    return Formula(FormulaKind::WeakUntil, {}, {std::move(hold), std::move(release)});
}

bool is_identifier(std::string_view text) {
    if (text.empty() || std::isalpha(static_cast<unsigned char>(text.front())) == 0) return false;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '_') return false;
    }
    return true;
}

bool is_formula_keyword(std::string_view text) {
    return text == "AG" || text == "AX" || text == "AF" || text == "A" || text == "W";
}

namespace {

constexpr std::array<std::string_view, 10> kSymbols = {"->", "!", "&", "|", "(", ")", "[", "]", ":", ";"};

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : lex_(text, kSymbols) {}

    Formula parse_single() {
        Formula f = parse_formula();
        expect_end();
        return f;
    }

    RuleSet parse_rule_file() {
        RuleSet rules;
        std::set<std::string, std::less<>> seen;
        while (!lex_.at_end()) {
            if (lex_.peek().kind != TokenKind::Identifier || is_formula_keyword(lex_.peek().text)) {
                lex_.fail_expected(lex_.peek(), "rule label");
            }
            Token label = lex_.next();
            if (!seen.insert(label.text).second) {
                lex_.fail(label, "duplicate rule label '" + label.text + "'");
            }
            lex_.expect_symbol(":");
            Formula body = parse_formula();
            if (!lex_.peek_symbol(";")) {
                if (lex_.peek_symbol(")") || lex_.peek_symbol("]")) {
                    lex_.fail(lex_.peek(), "unbalanced '" + lex_.peek().text + "' with no matching opener");
                }
                lex_.fail_expected(lex_.peek(), "';' after rule '" + label.text + "'");
            }
            lex_.next();
            rules.rules.push_back(Rule{label.text, std::move(body)});
        }
        return rules;
    }

private:
    void expect_end() {
        if (lex_.at_end()) return;
        if (lex_.peek_symbol(")") || lex_.peek_symbol("]")) {
            lex_.fail(lex_.peek(), "unbalanced '" + lex_.peek().text + "' with no matching opener");
        }
        lex_.fail_expected(lex_.peek(), "end of formula");
    }

    Formula parse_formula() { return parse_implies(); }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (lex_.accept_symbol("->")) return Formula::implies(std::move(lhs), parse_implies());
        return lhs;
    }

    Formula parse_or() {
        std::vector<Formula> operands;
        operands.push_back(parse_and());
        while (lex_.accept_symbol("|")) operands.push_back(parse_and());
        if (operands.size() == 1) return std::move(operands.front());
        return Formula::disjunction(std::move(operands));
    }

    Formula parse_and() {
        std::vector<Formula> operands;
        operands.push_back(parse_unary());
        while (lex_.accept_symbol("&")) operands.push_back(parse_unary());
        if (operands.size() == 1) return std::move(operands.front());
        return Formula::conjunction(std::move(operands));
    }

    void close(const Token& opener, std::string_view closer) {
        if (lex_.peek_symbol(closer)) {
            lex_.next();
            return;
        }
        lex_.fail(lex_.peek(), "unbalanced '" + opener.text + "' opened at " + std::to_string(opener.line) + ":" +
                                   std::to_string(opener.column) + ": expected '" + std::string(closer) +
                                   "', found " + detail::describe(lex_.peek()));
    }

    Formula parse_unary() {
        const Token tok = lex_.peek();
        if (tok.kind == TokenKind::Symbol) {
            if (tok.text == "!") {
                lex_.next();
                return Formula::negation(parse_unary());
            }
            if (tok.text == "(") {
                Token open = lex_.next();
                Formula inner = parse_formula();
                close(open, ")");
                return inner;
            }
            lex_.fail_expected(tok, "formula");
        }
        if (tok.kind != TokenKind::Identifier) lex_.fail_expected(tok, "formula");

        Token word = lex_.next();
        if (word.text == "AG") return Formula::always_globally(parse_unary());
        if (word.text == "AX") return Formula::always_next(parse_unary());
        if (word.text == "AF") return Formula::always_finally(parse_unary());
        if (word.text == "A") {
            if (!lex_.peek_symbol("[")) lex_.fail_expected(lex_.peek(), "'[' after path quantifier 'A'");
            Token open = lex_.next();
            Formula hold = parse_formula();
            if (!lex_.accept_identifier("W")) lex_.fail_expected(lex_.peek(), "'W' inside A[...]");
            Formula release = parse_formula();
            close(open, "]");
            return Formula::weak_until(std::move(hold), std::move(release));
        }
        if (word.text == "W") lex_.fail(word, "'W' outside of A[...]");
        return Formula::atom(word.text);
    }

    Lexer lex_;
};

void count_into(const Formula& f, bool negated, OccurrenceCount& out) {
    switch (f.kind()) {
        case FormulaKind::Atom: {
            auto& slot = out[f.name()];
            (negated ? slot.negated : slot.asserted) += 1;
            return;
        }
        case FormulaKind::Not:
            count_into(f.operands().front(), !negated, out);
            return;
        default:
            for (const Formula& child : f.operands()) count_into(child, negated, out);
            return;
    }
}

bool is_binary(const Formula& f) {
    return f.kind() == FormulaKind::And || f.kind() == FormulaKind::Or || f.kind() == FormulaKind::Implies;
}

void print_into(const Formula& f, std::string& out);

void print_grouped(const Formula& f, bool parenthesise, std::string& out) {
    if (parenthesise) out += '(';
    print_into(f, out);
    if (parenthesise) out += ')';
}

void print_prefix(std::string_view op, const Formula& child, std::string& out) {
    out += op;
    if (is_binary(child)) {
        print_grouped(child, true, out);
    } else {
        if (op != "!") out += ' ';
        print_into(child, out);
    }
}

void print_into(const Formula& f, std::string& out) {
    const auto& ops = f.operands();
    switch (f.kind()) {
        case FormulaKind::Atom:
            out += f.name();
            return;
        case FormulaKind::Not:
            print_prefix("!", ops[0], out);
            return;
        case FormulaKind::AlwaysGlobally:
            print_prefix("AG", ops[0], out);
            return;
        case FormulaKind::AlwaysNext:
            print_prefix("AX", ops[0], out);
            return;
        case FormulaKind::AlwaysFinally:
            print_prefix("AF", ops[0], out);
            return;
        case FormulaKind::WeakUntil:
            out += "A[";
            print_into(ops[0], out);
            out += " W ";
            print_into(ops[1], out);
            out += ']';
            return;
        case FormulaKind::Implies:
            print_grouped(ops[0], is_binary(ops[0]), out);
            out += " -> ";
            print_into(ops[1], out);
            return;
        case FormulaKind::And:
        case FormulaKind::Or: {
            const bool conj = f.kind() == FormulaKind::And;
            for (std::size_t i = 0; i < ops.size(); ++i) {
                if (i > 0) out += conj ? " & " : " | ";
                // An And operand of Or binds tighter and needs no parentheses.
                bool group = is_binary(ops[i]) && !(!conj && ops[i].kind() == FormulaKind::And);
                print_grouped(ops[i], group, out);
            }
            return;
        }
    }
}

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse_single(); }

RuleSet parse_rules(std::string_view text) { return FormulaParser(text).parse_rule_file(); }

OccurrenceCount count_occurrences(const Formula& f) {
    OccurrenceCount out;
    count_into(f, false, out);
    return out;
}

std::string pretty_print(const Formula& f) {
    std::string out;
    print_into(f, out);
    return out;
}

std::string pretty_print(const RuleSet& rules) {
    std::string out;
    for (const Rule& rule : rules.rules) {
        out += rule.label;
        out += " : ";
        out += pretty_print(rule.body);
        out += ";\n";
    }
    return out;
}

}  // namespace covbal
