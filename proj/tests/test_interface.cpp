#include "doctest.h"

#include <random>

#include "covbal/errors.hpp"
#include "covbal/interface.hpp"
#include "generators.hpp"
#include "paths.hpp"

using namespace covbal;
using covbal::testing::negate_atoms;
using covbal::testing::strip_negations;

namespace {

BlockInterface arbiter() { return parse_interface(covbal::testing::read_data("arbiter.iface")); }

RuleSet arbiter_rules() { return parse_rules(covbal::testing::read_data("arbiter.rules")); }

}  // namespace

TEST_CASE("parse_interface") {
    SUBCASE("arbiter") {
        BlockInterface iface = arbiter();
        CHECK(iface.block_name() == "arbiter");
        CHECK(iface.signals().size() == 4);
        CHECK(iface.inputs() == std::vector<std::string>{"req1", "req2"});
        CHECK(iface.outputs() == std::vector<std::string>{"ack1", "ack2"});
        CHECK(iface.punctures() == std::vector<std::string>{"robin"});
        CHECK(iface.direction_of("req2") == Direction::Input);
        CHECK_FALSE(iface.direction_of("robin").has_value());
        CHECK(iface.is_puncture("robin"));
    }
    SUBCASE("write-request block with manual pressure") {
        BlockInterface iface = parse_interface(covbal::testing::read_data("write_request.iface"));
        CHECK(iface.inputs() == std::vector<std::string>{"ack"});
        CHECK(iface.outputs() == std::vector<std::string>{"req", "wr"});
        CHECK(iface.punctures() == std::vector<std::string>{"p"});
        CHECK(iface.manual_pressures().at("p") == Variance{-2});
    }
    SUBCASE("column order puts inputs first") {
        BlockInterface iface = parse_interface("block b\noutputs o1\ninputs i1, i2\noutputs o2\n");
        CHECK(iface.column_order() == std::vector<std::string>{"i1", "i2", "o1", "o2"});
    }
    SUBCASE("empty punctures line is allowed") {
        BlockInterface iface = parse_interface("block b\ninputs a\npunctures\noutputs c\n");
        CHECK(iface.punctures().empty());
        CHECK(iface.signals().size() == 2);
    }
}

TEST_CASE("parse_interface rejects bad input") {
    CHECK_THROWS_AS(parse_interface("block b\ninputs x\noutputs x\n"), ParseError);
    CHECK_THROWS_AS(parse_interface("block b\ninputs x, x\n"), ParseError);
    CHECK_THROWS_AS(parse_interface("block b\ninputs x\npunctures x\n"), ParseError);
    CHECK_THROWS_AS(parse_interface("block b\npunctures p\n"), ValidationError);
    CHECK_THROWS_AS(parse_interface("block b\n"), ValidationError);
    CHECK_THROWS_AS(parse_interface("inputs a\n"), ParseError);
    CHECK_THROWS_AS(parse_interface("block b\ninputs a,\n"), ParseError);
    CHECK_THROWS_AS(parse_interface("block b\ninputs a\nwires c\n"), ParseError);
    CHECK_THROWS_AS(parse_interface("block b\ninputs a\npressure q = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_interface("block b\ninputs a\npunctures p\npressure p = 1\npressure p = 2\n"), ParseError);
    CHECK_THROWS_AS(parse_interface("block b\nblock c\ninputs a\n"), ParseError);

    try {
        parse_interface("block b\ninputs a\noutputs b2, a\n");
        FAIL("expected duplicate error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 13);
    }

    CHECK_THROWS_AS(BlockInterface("b", {}), ValidationError);
    CHECK_THROWS_AS(BlockInterface("b", {{"a", Direction::Input}, {"a", Direction::Output}}), ValidationError);
}

TEST_CASE("message and puncture measures") {
    CHECK(message_measure(Message(Orientation::OutwardNormal, {"req", "wr"})) == Variance{2});
    CHECK(message_measure(Message(Orientation::InwardNormal, {"ack"})) == Variance{-1});
    CHECK(message_measure(Message(Orientation::OutwardNormal, {"s"})) == Variance{1});
    CHECK_THROWS(Message(Orientation::OutwardNormal, {}));

    std::vector<Message> mixed = {Message(Orientation::OutwardNormal, {"s1", "s2"}),
                                  Message(Orientation::OutwardNormal, {"s3"}),
                                  Message(Orientation::InwardNormal, {"s4", "s5"})};
    CHECK(puncture_measure(mixed) == Variance{1});
    CHECK(puncture_measure({}) == Variance{0});

    std::vector<Message> source = {Message(Orientation::InwardNormal, {"a", "b", "c"}),
                                   Message(Orientation::InwardNormal, {"d"})};
    CHECK(puncture_measure(source) == Variance{-4});
}

TEST_CASE("puncture measure is additive over concatenation") {
    std::mt19937 rng(99);
    auto random_messages = [&] {
        std::vector<Message> out;
        int n = covbal::testing::uniform(rng, 0, 5);
        for (int i = 0; i < n; ++i) {
            std::vector<std::string> signals(covbal::testing::uniform(rng, 1, 4), "s");
            out.emplace_back(covbal::testing::uniform(rng, 0, 1) ? Orientation::OutwardNormal
                                                                  : Orientation::InwardNormal,
                             signals);
        }
        return out;
    };
    for (int i = 0; i < 200; ++i) {
        auto a = random_messages();
        auto b = random_messages();
        std::vector<Message> both = a;
        both.insert(both.end(), b.begin(), b.end());
        CHECK(puncture_measure(both) == puncture_measure(a) + puncture_measure(b));
    }
}

TEST_CASE("rule_variance") {
    SUBCASE("write-request rule") {
        BlockInterface iface("blk", {{"ack", Direction::Input}, {"req", Direction::Output}, {"wr", Direction::Output}});
        RuleVarianceRow row = rule_variance(Rule{"rho", parse_formula("AG((!ack & req & wr) -> AF ack)")}, iface);
        CHECK(row.delta == Variance{1});
        CHECK(row.asserted("ack") == 1);
        CHECK(row.asserted("req") == 1);
        CHECK(row.unknown_atoms.empty());
    }
    SUBCASE("rho4 on the arbiter") {
        RuleVarianceRow row = rule_variance(Rule{"rho4", parse_formula("AG((req1 & ack2) -> AX ack1)")}, arbiter());
        CHECK(row.delta == Variance{1});
    }
    SUBCASE("no asserted interface atoms") {
        RuleVarianceRow row = rule_variance(Rule{"r", parse_formula("AG(!req1 -> AX !ack1)")}, arbiter());
        CHECK(row.delta == Variance{0});
    }
    SUBCASE("unknown and puncture atoms contribute nothing") {
        RuleVarianceRow row = rule_variance(Rule{"r", parse_formula("AG((req & robin) -> AX ack1)")}, arbiter());
        CHECK(row.delta == Variance{1});
        CHECK(row.unknown_atoms == std::vector<std::string>{"req"});
        CHECK(row.puncture_atoms == std::vector<std::string>{"robin"});
    }
}

TEST_CASE("set_variance") {
    BlockInterface iface = arbiter();
    RuleTable table = set_variance(arbiter_rules(), iface);
    CHECK(table.total == Variance{3});
    std::vector<std::int64_t> deltas;
    for (const auto& row : table.rows) deltas.push_back(row.delta.value);
    CHECK(deltas == std::vector<std::int64_t>{0, 0, 0, 1, 1, 1, 0, 0});

    CHECK(set_variance(RuleSet{}, iface).total == Variance{0});
    CHECK(set_variance(RuleSet{}, iface).rows.empty());

    // rho4 weakened to AX(ack1 | ack2): req1 -1, ack1 +1, ack2 +2 gives +2, so the set goes from +3 to +4.
    RuleTable weak = set_variance(parse_rules(covbal::testing::read_data("arbiter_weak_rho4.rules")), iface);
    CHECK(weak.rows[3].rule_label == "rho4p");
    CHECK(weak.rows[3].delta == Variance{2});
    CHECK(weak.total == Variance{4});
}

TEST_CASE("variance invariants over generated rule sets") {
    std::mt19937 rng(4242);
    BlockInterface iface = arbiter();
    for (int i = 0; i < 200; ++i) {
        RuleSet rs;
        int n = covbal::testing::uniform(rng, 0, 6);
        for (int k = 0; k < n; ++k) {
            rs.rules.push_back(Rule{"r" + std::to_string(k), covbal::testing::random_formula(rng, 4)});
        }
        RuleTable table = set_variance(rs, iface);

        // additivity
        Variance sum;
        for (const Rule& r : rs.rules) sum += rule_variance(r, iface).delta;
        CHECK(table.total == sum);

        // direction antisymmetry
        RuleTable swapped = set_variance(rs, iface.with_directions_swapped());
        CHECK(swapped.total == -table.total);
        for (std::size_t k = 0; k < table.rows.size(); ++k) CHECK(swapped.rows[k].delta == -table.rows[k].delta);

        // negation nullity
        RuleSet negated;
        for (const Rule& r : rs.rules) negated.rules.push_back(Rule{r.label, negate_atoms(strip_negations(r.body))});
        for (const auto& row : set_variance(negated, iface).rows) {
            CHECK(row.delta == Variance{0});
            for (const auto& [name, c] : row.signal_counts) CHECK(c.asserted == 0);
        }
    }
}

TEST_CASE("block_balance") {
    std::vector<Variance> robin = {Variance{-3}};
    BalanceReport balanced = block_balance(Variance{3}, robin);
    CHECK(balanced.residual == Variance{0});
    CHECK(balanced.verdict == Verdict::Balanced);

    BalanceReport empty = block_balance(Variance{0}, {});
    CHECK(empty.verdict == Verdict::Balanced);

    BalanceReport missing = block_balance(Variance{3}, {});
    CHECK(missing.residual == Variance{3});
    CHECK(missing.verdict == Verdict::PositiveImbalance);

    std::vector<Variance> heavy = {Variance{-3}, Variance{-1}};
    CHECK(block_balance(Variance{3}, heavy).verdict == Verdict::NegativeImbalance);

    for (int r = -5; r <= 5; ++r) {
        Verdict v = verdict_for(Variance{r});
        CHECK((v == Verdict::Balanced) == (r == 0));
        CHECK((v == Verdict::PositiveImbalance) == (r > 0));
    }
    CHECK(to_string(Verdict::PositiveImbalance) == "positive_imbalance");
}
