#include <gtest/gtest.h>

#include "generators.hpp"
#include "ttc/parse.hpp"
#include "ttc/print.hpp"

using namespace ttc;

namespace {

TPtr example1_body() {
    return t_conj(t_conj(t_transfer("a", q_var("u")), t_delay(t_transfer("a", q_const(5)))),
                  t_delay(t_transfer("b", q_sub(q_var("u"), q_const(7))), 2));
}

}  // namespace

TEST(ParseQuantity, GuardExpression) {
    QPtr parsed = parse_quantity("1 - (1+u)/(1+u)");
    QPtr one_plus = q_add(q_one(), q_var("u"));
    QPtr expected = q_sub(q_one(), q_div(one_plus, one_plus));
    EXPECT_TRUE(equal(parsed, expected));
}

TEST(ParseQuantity, Zero) {
    EXPECT_TRUE(equal(parse_quantity("0"), q_const(0)));
}

TEST(ParseQuantity, IcapRoundTrip) {
    QPtr q = parse_quantity("icap@(1/100)( a(7) & delay(a'(-8)) )");
    const auto* node = std::get_if<QICap>(&q->node);
    ASSERT_NE(node, nullptr);
    EXPECT_TRUE(equal(node->rate, q_const(Rational(1, 100))));
    EXPECT_TRUE(equal(parse_quantity(print(q)), q));
}

TEST(ParseQuantity, PrecedenceAndDesugaring) {
    // unary minus binds tighter than ^: -2^2 == 4
    EXPECT_EQ(eval_quantity(parse_quantity("-2^2"), {}), Rational(4));
    EXPECT_EQ(eval_quantity(parse_quantity("1 + 2 * 3"), {}), Rational(7));
    EXPECT_EQ(eval_quantity(parse_quantity("(1+1/10)^2 * 5"), {}), Rational(121, 20));
    EXPECT_EQ(eval_quantity(parse_quantity("max(-8, 0)"), {}), Rational(0));
    EXPECT_EQ(eval_quantity(parse_quantity("min(3, -5)"), {}), Rational(-5));
    EXPECT_EQ(eval_quantity(parse_quantity("inv(0)"), {}), Rational(0));
    EXPECT_EQ(eval_quantity(parse_quantity("sign(-7/2)"), {}), Rational(-1));
    // adjacent digits make one literal, spaced digits a division
    EXPECT_TRUE(equal(parse_quantity("1/2"), q_const(Rational(1, 2))));
    EXPECT_TRUE(equal(parse_quantity("1 / 2"), q_div(q_const(1), q_const(2))));
    EXPECT_EQ(eval_quantity(parse_quantity("1 / 2"), {}), Rational(1, 2));
    // decimals are exact
    EXPECT_TRUE(equal(parse_quantity("0.25"), q_const(Rational(1, 4))));
    // 1/0 is not a literal; it lexes as a (total) division
    EXPECT_EQ(eval_quantity(parse_quantity("1/0"), {}), Rational(0));
}

TEST(ParseTuplix, Example1Body) {
    TPtr parsed = parse_tuplix("a(u) & delay(a(5)) & delay^2(b(u-7))");
    EXPECT_TRUE(equal(parsed, example1_body()));
}

TEST(ParseTuplix, Empty) {
    EXPECT_TRUE(equal(parse_tuplix("eps"), t_empty()));
    EXPECT_TRUE(equal(parse_tuplix("bot"), t_block()));
}

TEST(ParseTuplix, EncRoundTrip) {
    TPtr t = parse_tuplix("enc{a}@p( a(1) & delay(a(-2)) )");
    const auto* node = std::get_if<TIntEncap>(&t->node);
    ASSERT_NE(node, nullptr);
    EXPECT_EQ(node->actions, std::vector<std::string>{"a"});
    EXPECT_TRUE(equal(node->rate, q_var("p")));
    EXPECT_TRUE(equal(parse_tuplix(print(t)), t));
}

TEST(ParseTuplix, DelaySugar) {
    EXPECT_TRUE(equal(parse_tuplix("delay^0(a(1))"), parse_tuplix("a(1)")));
    EXPECT_TRUE(equal(parse_tuplix("delay^2(a(1))"), parse_tuplix("delay(delay(a(1)))")));
    EXPECT_EQ(print(parse_tuplix("delay(delay(a(1)))")), "delay^2(a(1))");
}

TEST(ParseTuplix, CommentsAndWhitespace) {
    TPtr t = parse_tuplix("a(1) # transfer one\n & b(2)  # and two\n");
    EXPECT_TRUE(equal(t, t_conj(t_transfer("a", q_const(1)), t_transfer("b", q_const(2)))));
}

TEST(ParseTuplix, RateAtoms) {
    TPtr neg = parse_tuplix("enc{a}@-1/2(a(1))");
    const auto* n = std::get_if<TIntEncap>(&neg->node);
    ASSERT_NE(n, nullptr);
    EXPECT_TRUE(equal(n->rate, q_const(Rational(-1, 2))));
    EXPECT_TRUE(equal(parse_tuplix(print(neg)), neg));

    TPtr expr = parse_tuplix("enc{a}@(p+1)(a(1))");
    const auto* e = std::get_if<TIntEncap>(&expr->node);
    ASSERT_NE(e, nullptr);
    EXPECT_TRUE(equal(e->rate, q_add(q_var("p"), q_const(1))));
    EXPECT_TRUE(equal(parse_tuplix(print(expr)), expr));
}

TEST(ParseTuplix, MultiDigitDelayAndPrimedNames) {
    TPtr t = parse_tuplix("delay^12(a''(1))");
    EXPECT_EQ(delay_depth(t), 12u);
    std::set<std::string> expected{"a''", "iota"};
    EXPECT_EQ(actions_of(t), expected);
    EXPECT_EQ(print(t), "delay^12(a''(1))");
}

TEST(Print, Examples) {
    EXPECT_EQ(print(t_empty()), "eps");
    EXPECT_EQ(print(t_block()), "bot");
    EXPECT_EQ(print(example1_body()), "a(u) & delay(a(5)) & delay^2(b(u - 7))");
    EXPECT_EQ(print(q_const(Rational(-707, 100))), "-707/100");
}

TEST(ParseErrors, CarryPositions) {
    try {
        parse_tuplix("a(1) &");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 1);
        EXPECT_EQ(e.col, 7);
    }
    try {
        parse_tuplix("a(1) &\n b(");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 2);
        EXPECT_GT(e.col, 0);
    }
    EXPECT_THROW(parse_tuplix(""), ParseError);
    EXPECT_THROW(parse_quantity("1 +"), ParseError);
    EXPECT_THROW(parse_tuplix("delay^(a(1))"), ParseError);
    EXPECT_THROW(parse_tuplix("a(1) b(2)"), ParseError);
    EXPECT_THROW(parse_quantity("u^4000000000"), ParseError);
    EXPECT_THROW(parse_tuplix("delay^99999999(a(1))"), ParseError);
}

TEST(ParseErrors, NameHygiene) {
    // same name as action and variable
    EXPECT_THROW(parse_tuplix("a(a)"), ParseError);
    EXPECT_THROW(parse_tuplix("a(1) & test(a)"), ParseError);
    EXPECT_THROW(parse_tuplix("test(a) & a(1)"), ParseError);
    // iota is reserved: fine as action, never a variable, never abstracted
    EXPECT_NO_THROW(parse_tuplix("iota(5)"));
    EXPECT_NO_THROW(parse_tuplix("enc{iota}@0(iota(0))"));
    EXPECT_THROW(parse_tuplix("abs{iota}(eps)"), ParseError);
    EXPECT_THROW(parse_quantity("iota + 1"), ParseError);
    // reserved words cannot be identifiers
    EXPECT_THROW(parse_quantity("eps + 1"), ParseError);
    EXPECT_THROW(parse_tuplix("test(1) & max(3)"), ParseError);
}

TEST(Actions, OfTerm) {
    std::set<std::string> expected{"a", "b", "iota"};
    EXPECT_EQ(actions_of(example1_body()), expected);
    EXPECT_EQ(actions_of(t_empty()), std::set<std::string>{"iota"});
    EXPECT_EQ(actions_of(t_transfer(kIota, q_const(5))), std::set<std::string>{"iota"});
    // set members and icap bodies count
    TPtr t = parse_tuplix("abs{x}(test(icap@0(y(1))))");
    EXPECT_TRUE(actions_of(t).count("x"));
    EXPECT_TRUE(actions_of(t).count("y"));
}

TEST(DelayDepth, ExamplesAndLaws) {
    EXPECT_EQ(delay_depth(parse_tuplix("a(7) & delay(a'(-8))")), 1u);
    EXPECT_EQ(delay_depth(t_empty()), 0u);
    EXPECT_EQ(delay_depth(parse_tuplix("delay^2(b(5))")), 2u);
    ttcgen::Gen gen(99);
    for (int i = 0; i < 300; ++i) {
        TPtr x = gen.open_tuplix(3, {"u"});
        TPtr y = gen.open_tuplix(3, {"u"});
        EXPECT_EQ(delay_depth(t_conj(x, y)), std::max(delay_depth(x), delay_depth(y)));
        EXPECT_EQ(delay_depth(t_delay(x)), 1 + delay_depth(x));
    }
}

TEST(RoundTrip, RandomTerms) {
    ttcgen::Gen gen(4242);
    const std::vector<std::string> vars = {"u", "v", "w"};
    for (int i = 0; i < 6000; ++i) {
        TPtr t = gen.open_tuplix(static_cast<int>(gen.irange(0, 4)), vars);
        std::string text = print(t);
        TPtr back;
        try {
            back = parse_tuplix(text);
        } catch (const ParseError& e) {
            FAIL() << "printed term failed to parse: " << text << " (" << e.what() << ")";
        }
        EXPECT_TRUE(equal(back, t)) << "round trip changed: " << text << " -> " << print(back);
    }
    for (int i = 0; i < 6000; ++i) {
        QPtr q = gen.qty(static_cast<int>(gen.irange(0, 5)), vars);
        std::string text = print(q);
        QPtr back;
        try {
            back = parse_quantity(text);
        } catch (const ParseError& e) {
            FAIL() << "printed quantity failed to parse: " << text << " (" << e.what() << ")";
        }
        EXPECT_TRUE(equal(back, q)) << "round trip changed: " << text << " -> " << print(back);
    }
}
