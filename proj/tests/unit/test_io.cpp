#include "wph/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace wph;

namespace {

template <class Parse>
auto parse(const std::string& text, Parse p) {
  std::istringstream in(text);
  return p(in);
}

WeightedDigraph digraph(const std::string& text) {
  return parse(text, [](std::istream& in) { return parse_digraph(in); });
}

std::size_t error_line(const std::string& text) {
  try {
    digraph(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::size_t filtration_error_line(const std::string& text) {
  try {
    parse(text, [](std::istream& in) { return parse_filtration(in); });
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Parse, Digraph) {
  auto g = digraph("# G1\nv i0 2\nv i1 4   # heavy\n\nv i2 1/3\ne i0 i1\n");
  EXPECT_EQ(g.ids(), (std::vector<VertexId>{"i0", "i1", "i2"}));
  EXPECT_EQ(g.weights(), (std::vector<Rational>{2, 4, Rational(1, 3)}));
  EXPECT_EQ(g.edge_ids(), (std::vector<std::pair<VertexId, VertexId>>{{"i0", "i1"}}));
}

TEST(Parse, DigraphErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("v a 1\nv a 2\n"), 2u);
  EXPECT_EQ(error_line("v a 1\n\ne a b\n"), 3u);
  EXPECT_EQ(error_line("v a x\n"), 1u);
  EXPECT_EQ(error_line("v a 1\nq\n"), 2u);
  EXPECT_EQ(error_line("v a 1 2\n"), 1u);
}

TEST(Parse, LoopsAndZeroWeightsReachValidation) {
  auto g = digraph("v a 0\ne a a\n");
  auto v = validate_digraph(g, Ring::Integers);
  EXPECT_NE(std::find(v.begin(), v.end(), "zero weight at a"), v.end());
  EXPECT_NE(std::find(v.begin(), v.end(), "loop at a"), v.end());
}

TEST(Parse, VertexMap) {
  auto m = parse("m i0 i0\nm i2 i1\n", [](std::istream& in) { return parse_vertex_map(in); });
  EXPECT_EQ(m, (std::map<VertexId, VertexId>{{"i0", "i0"}, {"i2", "i1"}}));
  EXPECT_THROW(parse("m a b\nm a c\n", [](std::istream& in) { return parse_vertex_map(in); }), ParseError);
}

TEST(Parse, Filtration) {
  auto f = parse("v i0 2 1\nv i1 4 1\nv i2 1 1\ne i0 i1 1\ne i1 i2 2\n",
                 [](std::istream& in) { return parse_filtration(in); });
  ASSERT_EQ(f.steps.size(), 2u);
  EXPECT_EQ(f.steps[0].edges().size(), 1u);
  EXPECT_EQ(f.steps[1].edges().size(), 2u);
  EXPECT_EQ(f.global_weights.at("i1"), 4);
  EXPECT_TRUE(validate_filtration(f, Ring::Integers).empty());
}

TEST(Parse, FiltrationErrors) {
  EXPECT_EQ(filtration_error_line("v a 1 2\nv b 1 1\ne a b 1\n"), 3u);
  EXPECT_EQ(filtration_error_line("v a 1 0\n"), 1u);
  EXPECT_EQ(filtration_error_line("v a 1 -1\n"), 1u);
  EXPECT_EQ(filtration_error_line("v a 1 x\n"), 1u);
  EXPECT_EQ(filtration_error_line("# nothing\n"), 1u);
}

TEST(Format, DigraphRoundTrip) {
  auto g = digraph("v a 2\nv b -3/2\ne a b\ne b a\n");
  auto h = digraph(format_digraph(g));
  EXPECT_EQ(g.ids(), h.ids());
  EXPECT_EQ(g.weights(), h.weights());
  EXPECT_EQ(g.edges(), h.edges());
}

TEST(Json, DigraphRoundTrip) {
  auto g = digraph("v a 2\nv b 1/2\ne a b\n");
  auto j = to_json(g);
  EXPECT_EQ(j["weights"]["b"], "1/2");
  auto h = digraph_from_json(Json::parse(j.dump()));
  EXPECT_EQ(g.ids(), h.ids());
  EXPECT_EQ(g.weights(), h.weights());
  EXPECT_EQ(g.edges(), h.edges());
  EXPECT_THROW(digraph_from_json(Json::parse(R"({"vertices": ["a"]})")), Error);
}

TEST(Json, HomologyShape) {
  auto g = digraph("v i0 2\nv i1 4\nv i2 1\ne i0 i1\n");
  auto j = to_json(homology(g, Ring::Integers, 1), g);
  EXPECT_EQ(j["ring"], "Z");
  EXPECT_EQ(j["complex"], "omega");
  EXPECT_EQ(j["degrees"][0]["free_rank"], 2);
  EXPECT_EQ(j["degrees"][0]["torsion"], Json::array({2}));
  EXPECT_EQ(j["degrees"][0]["generators"].size(), 3u);
}

TEST(Json, HugeIntegersBecomeStrings) {
  Integer big = Integer(1) << 80;
  EXPECT_TRUE(integer_json(big).is_string());
  EXPECT_EQ(integer_json(Integer(-7)), -7);
}

TEST(Text, GroupLines) {
  EXPECT_EQ(format_group_line(0, FgAbelianGroup{2, {2}}, Ring::Integers), "H_0 = Z^2 + Z/2");
  EXPECT_EQ(format_group_line(1, FgAbelianGroup{1, {}}, Ring::Rationals), "H_1: dim 1");
  EXPECT_EQ(format_group_line(-1, FgAbelianGroup{}, Ring::Integers), "H_-1 = 0");
}

TEST(Text, ChainsAndBars) {
  auto g = digraph("v a 1\nv b 1\ne a b\n");
  Chain c = Chain::elementary({0, 1}, 2) - Chain::elementary({1, 0});
  EXPECT_EQ(format_chain(c, g), "2 e[a,b] - e[b,a]");
  EXPECT_EQ(format_bar(0, Bar{1, 2, 1}), "p=0  [1, 2) x1");
  EXPECT_EQ(format_bar(1, Bar{2, std::nullopt, 3}), "p=1  [2, inf) x3");
}
