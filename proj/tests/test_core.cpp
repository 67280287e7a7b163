#include <gtest/gtest.h>

#include <limits>
#include <sstream>

#include "cstar/chain.hpp"
#include "cstar/error.hpp"
#include "cstar/graph.hpp"
#include "cstar/rational.hpp"
#include "oracles.hpp"

using namespace cstar;

TEST(Rational, ReducesAndNormalizesSign) {
    Rational r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_EQ(Rational(4, 2).str(), "2");
    EXPECT_TRUE(Rational(4, 2).is_integer());
}

TEST(Rational, Arithmetic) {
    Rational a(1, 6);
    Rational b(1, 10);
    EXPECT_EQ(a + b, Rational(4, 15));
    EXPECT_EQ(a - b, Rational(1, 15));
    EXPECT_EQ(a * b, Rational(1, 60));
    EXPECT_EQ(a / b, Rational(5, 3));
    EXPECT_EQ(-a, Rational(-1, 6));
    EXPECT_EQ(Rational(3, 7).reciprocal(), Rational(7, 3));
}

TEST(Rational, Ordering) {
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
    EXPECT_LE(Rational(2, 4), Rational(1, 2));
    std::ostringstream os;
    os << Rational(5, 15);
    EXPECT_EQ(os.str(), "1/3");
}

TEST(Rational, Errors) {
    EXPECT_THROW(Rational(1, 0), Error);
    EXPECT_THROW(Rational(0).reciprocal(), Error);
    const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2 + 1;
    try {
        Rational x = Rational(big) * Rational(4);
        FAIL() << "expected overflow, got " << x;
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Overflow);
    }
}

TEST(Chain, DiscriminantExamples) {
    EXPECT_EQ(discriminant({}), 1);
    EXPECT_EQ(discriminant({2}), 2);
    EXPECT_EQ(discriminant({2, 2}), 3);
    EXPECT_EQ(discriminant({2, 2, 2}), 4);
    EXPECT_EQ(discriminant({3, 2}), 5);
    EXPECT_EQ(discriminant({2, 3, 2}), 8);
    EXPECT_EQ(discriminant({1, 1}), 0);
}

TEST(Chain, PrimesAndE) {
    Chain c{3, 2};
    EXPECT_EQ(d_prime(c), 2);
    EXPECT_EQ(d_doubleprime(c), 3);
    EXPECT_EQ(e_twig(c), Rational(2, 5));
    EXPECT_EQ(e_twig(reversed(c)), Rational(3, 5));
    EXPECT_EQ(e_quotient_chain({2}), Rational(2));
    EXPECT_EQ(e_quotient_chain({2, 2}), Rational(2));
    EXPECT_EQ(e_quotient_chain({3}), Rational(4, 3));
    EXPECT_THROW(d_prime({}), Error);
    EXPECT_THROW(e_twig({2, 1}), Error);
}

TEST(Chain, DiscriminantMatchesCofactorOracle) {
    for (std::int64_t a = 1; a <= 5; ++a) {
        for (std::int64_t b = 1; b <= 5; ++b) {
            for (std::int64_t c = 1; c <= 5; ++c) {
                for (std::int64_t d = 1; d <= 5; ++d) {
                    Chain ch{a, b, c, d};
                    ASSERT_EQ(discriminant(ch), oracle::chain_det(ch)) << format_chain(ch);
                    ASSERT_EQ(discriminant(ch), discriminant(reversed(ch)));
                }
            }
        }
    }
}

TEST(Chain, AdmissibilityAndFormat) {
    EXPECT_TRUE(is_admissible({2, 5}));
    EXPECT_FALSE(is_admissible({2, 1}));
    EXPECT_EQ(format_chain({2, 3, 4}), "[2,3,4]");
    EXPECT_EQ(parse_chain(" [ 2, 3 ,4 ]"), (Chain{2, 3, 4}));
    EXPECT_EQ(parse_chain("[]"), Chain{});
}

TEST(Chain, ParseErrorsCarryPosition) {
    try {
        parse_chain("[2,x]");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 3u);
    }
    EXPECT_THROW(parse_chain("2,3]"), ParseError);
    EXPECT_THROW(parse_chain("[2,3"), ParseError);
}

TEST(Graph, BuildAndQuery) {
    WeightedGraph g;
    int a = g.add_vertex(2);
    int b = g.add_vertex(1, Label::C);
    int c = g.add_vertex(3);
    g.add_edge(a, b);
    g.add_edge(b, c);
    EXPECT_EQ(g.size(), 3u);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(g.degree(b), 2);
    EXPECT_TRUE(g.is_forest());
    EXPECT_TRUE(g.is_connected());
    EXPECT_EQ(g.find_label(Label::C), b);
    EXPECT_FALSE(g.find_label(Label::E).has_value());
    EXPECT_THROW(g.add_vertex(1, Label::C), Error);
    g.remove_vertex(b);
    EXPECT_EQ(g.components().size(), 2u);
    EXPECT_FALSE(g.has_edge(a, c));
}

TEST(Graph, MarkedEdgesAndCycle) {
    WeightedGraph g;
    int c = g.add_vertex(1, Label::C);
    int ct = g.add_vertex(1, Label::CTilde);
    int m = g.add_vertex(2);
    int e = g.add_vertex(3, Label::E);
    g.add_edge(c, m);
    g.add_edge(m, ct);
    g.add_edge(c, e);
    g.add_edge(ct, e);
    EXPECT_FALSE(g.is_forest());
    EXPECT_TRUE(g.is_marked_edge(c, e));
    EXPECT_FALSE(g.is_marked_edge(c, m));
    std::string dot = to_dot(g);
    EXPECT_NE(dot.find("dashed"), std::string::npos);
}

TEST(Graph, TextRoundTrip) {
    WeightedGraph g = graph_from_chain({2, 3, 1});
    g.set_label(2, Label::C);
    g.insert_vertex(7, 4, Label::E);
    g.add_edge(2, 7);
    WeightedGraph back = parse_graph_text("# comment\n" + to_text(g));
    EXPECT_EQ(back, g);
    EXPECT_THROW(parse_graph_text("0 2 NOPE\n"), ParseError);
}

TEST(Graph, InducedSubgraph) {
    WeightedGraph g = graph_from_chain({2, 2, 2, 2});
    WeightedGraph h = g.induced({0, 1, 3});
    EXPECT_EQ(h.size(), 3u);
    EXPECT_EQ(h.edge_count(), 1u);
}
