#include <gtest/gtest.h>

#include "oracles.h"
#include "swarmcit/errors.h"
#include "swarmcit/model.h"
#include "swarmcit/model_io.h"

namespace swarmcit {
namespace {

using testing::running_example_model;

TEST(ParseModel, ThreeBinaryParametersWithTwoForbiddenPairs) {
  const auto model = parse_model(
      "2\n"
      "3\n"
      "2 2 2\n"
      "2\n"
      "2 0:0 2:0\n"
      "2 1:0 2:1\n");
  EXPECT_EQ(model.strength(), 2);
  EXPECT_EQ(model.parameter_count(), 3);
  ASSERT_EQ(model.constraints().size(), 2u);
  EXPECT_EQ(model, running_example_model());
}

TEST(ParseModel, UnconstrainedFourTernary) {
  const auto model = parse_model("2\n4\n3 3 3 3\n0\n");
  EXPECT_EQ(model.parameter_count(), 4);
  EXPECT_TRUE(model.constraints().empty());
  EXPECT_EQ(model.exhaustive_size(), 81u);
}

TEST(ParseModel, StrengthAboveParameterCount) {
  try {
    parse_model("3\n2\n2 2\n0\n");
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("t exceeds k"), std::string::npos);
  }
}

TEST(ParseModel, CommentsAndBlankLines) {
  const auto model = parse_model(
      "# header\n\n2   # strength\n3\n2 2 2\n\n1\n2 0:1 1:1  # pair\n");
  EXPECT_EQ(model.constraints().size(), 1u);
}

TEST(ParseModel, NamesSectionAndLabelsInConstraints) {
  const auto model = parse_model(
      "2\n2\n2 3\n1\n2 0:on 1:mid\nnames:\noff,on\nlow,mid,high\n");
  ASSERT_TRUE(model.has_value_names());
  EXPECT_EQ(model.value_names()[1][2], "high");
  const auto a = model.constraints().tuples()[0].assignments();
  EXPECT_EQ(a[0].value, 1);
  EXPECT_EQ(a[1].value, 1);
}

struct BadText {
  const char* text;
  std::size_t line;
};

class ParseErrors : public ::testing::TestWithParam<BadText> {};

TEST_P(ParseErrors, ReportLine) {
  try {
    parse_model(GetParam().text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), GetParam().line) << e.what();
  }
}

INSTANTIATE_TEST_SUITE_P(
    Grammar, ParseErrors,
    ::testing::Values(BadText{"", 1}, BadText{"x\n", 1}, BadText{"2\n3\n2 2\n0\n", 3},
                      BadText{"2\n3\n2 2 2\n1\n", 5}, BadText{"2\n3\n2 2 2\n1\n2 0:0 5:0\n", 5},
                      BadText{"2\n3\n2 2 2\n1\n2 0:0 1:2\n", 5},
                      BadText{"2\n3\n2 2 2\n1\n2 0:0 0:1\n", 5},
                      BadText{"2\n3\n2 2 2\n1\n1 0:0\n", 5},
                      BadText{"2\n3\n2 2 2\n1\n3 0:0 1:0\n", 5},
                      BadText{"2\n3\n2 2 2\n0\nnames:\na,b\n", 7},
                      BadText{"2\n3\n2 2 2\n0\n7\n", 5}));

TEST(ModelInvariants, RejectsSingleValueParameter) {
  EXPECT_THROW(SystemModel(2, {2, 1, 2}), ModelError);
}

TEST(ModelInvariants, RejectsSizeOneForbiddenTuple) {
  EXPECT_THROW(ForbiddenTuple({{0, 1}}), ModelError);
}

TEST(ModelInvariants, DuplicateConstraintsCollapse) {
  ConstraintSet cs;
  EXPECT_TRUE(cs.add(ForbiddenTuple({{0, 0}, {1, 0}})));
  EXPECT_FALSE(cs.add(ForbiddenTuple({{1, 0}, {0, 0}})));
  EXPECT_EQ(cs.size(), 1u);
}

TEST(Violates, Examples) {
  const auto cs = running_example_model().constraints();
  EXPECT_EQ(violates(std::vector{0, 1, 0}, cs), 1);
  EXPECT_EQ(violates(std::vector{1, 1, 0}, cs), 0);
  const ConstraintSet nested{ForbiddenTuple({{0, 0}, {1, 0}, {2, 0}}),
                             ForbiddenTuple({{0, 0}, {2, 0}})};
  EXPECT_EQ(violates(std::vector{0, 0, 0}, nested), 2);
}

TEST(Violates, EmptySetNeverViolated) {
  Rng rng(3);
  for (int n = 0; n < 200; ++n) {
    std::vector<int> row(6);
    for (auto& v : row) v = rng.below(4);
    EXPECT_EQ(violates(row, ConstraintSet{}), 0);
  }
}

TEST(Violates, AdditiveOverDisjointUnion) {
  Rng rng(11);
  for (int n = 0; n < 200; ++n) {
    const auto model = testing::random_model(rng, {6, 3, 8, 2});
    ConstraintSet a;
    ConstraintSet b;
    ConstraintSet both;
    int i = 0;
    for (const auto& f : model.constraints()) {
      (i++ % 2 ? a : b).add(f);
      both.add(f);
    }
    for (const auto& row : testing::all_rows(model)) {
      ASSERT_EQ(violates(row, both), violates(row, a) + violates(row, b));
    }
  }
}

TEST(RenderModel, RoundTripsRandomModels) {
  Rng rng(5);
  for (int n = 0; n < 300; ++n) {
    const auto model = testing::random_model(rng, {10, 5, 6, 3});
    const auto text = render_model(model);
    ASSERT_EQ(parse_model(text), model) << text;
    ASSERT_EQ(render_model(parse_model(text)), text);
  }
}

TEST(RenderModel, CanonicalForm) {
  EXPECT_EQ(render_model(running_example_model()),
            "2\n3\n2 2 2\n2\n2 0:0 2:0\n2 1:0 2:1\n");
}

TEST(RenderModel, RoundTripsNames) {
  const SystemModel model(2, {2, 3}, ConstraintSet{ForbiddenTuple({{0, 1}, {1, 2}})},
                          {{"off", "on"}, {"low", "mid", "high"}});
  EXPECT_EQ(parse_model(render_model(model)), model);
}

TEST(Notation, UniformValuesUseCaForm) {
  EXPECT_EQ(to_notation(SystemModel(2, {3, 3, 3, 3})).array, "CA(N; 2, 3^4)");
  EXPECT_EQ(to_notation(SystemModel(2, {3, 3, 3, 3})).constraints, "");
}

TEST(Notation, MixedValuesGroupAscending) {
  const SystemModel model(3, {4, 2, 2, 3},
                          ConstraintSet{ForbiddenTuple({{0, 0}, {1, 0}}),
                                        ForbiddenTuple({{0, 0}, {1, 1}, {2, 0}})});
  const auto n = to_notation(model);
  EXPECT_EQ(n.array, "MCA(N; 3, 2^2 3^1 4^1)");
  EXPECT_EQ(n.constraints, "2^1 3^1");
  EXPECT_EQ(n.str(), "MCA(N; 3, 2^2 3^1 4^1) constraints 2^1 3^1");
}

TEST(ValueTuple, CoveredByAndRendering) {
  const ValueTuple t{{0, 2}, {1, 0}};
  EXPECT_TRUE(t.covered_by(std::vector{1, 5, 0}));
  EXPECT_FALSE(t.covered_by(std::vector{1, 5, 1}));
  EXPECT_EQ(to_string(t), "0:1 2:0");
}

TEST(TestCase, CheckedRejectsOutOfRange) {
  const auto model = running_example_model();
  EXPECT_NO_THROW(TestCase::checked(model, {1, 1, 1}));
  EXPECT_THROW(TestCase::checked(model, {1, 2, 1}), ModelError);
  EXPECT_THROW(TestCase::checked(model, {1, 1}), ModelError);
}

}  // namespace
}  // namespace swarmcit
