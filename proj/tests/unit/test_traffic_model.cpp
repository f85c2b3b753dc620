#include <gtest/gtest.h>

#include <random>

#include "support/sampling.hpp"
#include "tropica/traffic_model.hpp"

namespace tropica {
namespace {

TrafficConfig nonuniform() { return {4, 3, {0.3, 0.1, 0.2, 0.2, 0.1, 0.2, 0.4}, Convention::EV}; }

TEST(Validate, AcceptsExample) { EXPECT_TRUE(validate(nonuniform()).empty()); }

TEST(Validate, JunctionOverflow) {
  TrafficConfig c = nonuniform();
  c.a[3] = 0.7;
  c.a[6] = 0.7;
  const auto v = validate(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].message.find("a_n + a_{n+m} = 1.4 > 1"), std::string::npos) << v[0].message;
}

TEST(Validate, SmallRoad) {
  const auto v = validate({1, 3, {0, 0, 0, 0}, Convention::EV});
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v[0].message.find("n >= 2"), std::string::npos) << v[0].message;
  EXPECT_FALSE(validate({2, 1, {0, 0, 0}, Convention::EV}).empty());
}

TEST(Validate, RangeAndLength) {
  TrafficConfig c = nonuniform();
  c.a[1] = -0.1;
  c.a[2] = 1.2;
  const auto v = validate(c);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].index, 2u);
  EXPECT_EQ(v[1].index, 3u);
  c = nonuniform();
  c.a.pop_back();
  EXPECT_FALSE(validate(c).empty());
}

TEST(Derive, NonuniformExample) {
  const DerivedParams p = derive(nonuniform());
  EXPECT_NEAR(p.d, 0.25, 1e-15);
  EXPECT_NEAR(p.r, 2.0 / 3, 1e-15);
  EXPECT_NEAR(p.rho, 1.0 / 6, 1e-15);
  EXPECT_NEAR(p.b_n, 0.6, 1e-15);
  EXPECT_NEAR(p.bbar_n, 2.4, 1e-15);
  EXPECT_NEAR(p.b_m, 0.3, 1e-15);
  EXPECT_NEAR(p.bbar_m, 1.7, 1e-15);
  EXPECT_NEAR(p.d1, 7.0 / 24, 1e-15);
  EXPECT_NEAR(p.d2, 13.0 / 24, 1e-15);
  EXPECT_NEAR(p.arc_bar(4), 0.4, 1e-15);
  EXPECT_NEAR(p.arc_bar(7), 0.4, 1e-15);
  EXPECT_NEAR(p.arc_bar(1), 0.7, 1e-15);
}

TEST(Derive, EmptySystem) {
  const DerivedParams p = derive({4, 3, std::vector<double>(7, 0.0), Convention::EV});
  EXPECT_EQ(p.d, 0.0);
  EXPECT_EQ(p.b_n, 0.0);
  EXPECT_EQ(p.bbar_n, 3.0);
}

TEST(Derive, TwoSeven) {
  const DerivedParams p = derive(allocate(2, 7, 0.3));
  EXPECT_DOUBLE_EQ(p.r, 0.25);
  EXPECT_DOUBLE_EQ(p.rho, 0.125);
  EXPECT_DOUBLE_EQ(p.d1, 9.0 / 32);
  EXPECT_DOUBLE_EQ(p.d2, 11.0 / 32);
}

TEST(Derive, RejectsInvalid) {
  TrafficConfig c = nonuniform();
  c.a[3] = 0.9;
  EXPECT_THROW(derive(c), InvalidConfig);
}

TEST(Derive, SumIdentities) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 2, 10);
    const std::size_t m = testing::uniform_size(rng, 2, 10);
    const TrafficConfig c = testing::random_config(n, m, testing::uniform(rng, 0, 1), rng);
    const DerivedParams p = derive(c);
    EXPECT_NEAR(p.b_n + p.bbar_n, static_cast<double>(n - 1), 1e-12);
    EXPECT_NEAR(p.b_m + p.bbar_m, static_cast<double>(m - 1), 1e-12);
    EXPECT_NEAR(p.arc(n) + p.arc(n + m) + p.b_n + p.b_m, static_cast<double>(n + m - 1) * p.d,
                1e-12);
    EXPECT_NEAR(p.rho, p.r / static_cast<double>(n), 1e-15);
    EXPECT_LT(p.d1, p.d2);
  }
}

TEST(Allocate, Examples) {
  const TrafficConfig low = allocate(4, 3, 0.25);
  for (double v : low.a) EXPECT_NEAR(v, 1.5 / 7, 1e-15);
  EXPECT_NEAR(derive(low).d, 0.25, 1e-15);

  const TrafficConfig full = allocate(4, 3, 1.0);
  const std::vector<double> expected{1, 1, 1, 0.5, 1, 1, 0.5};
  for (std::size_t i = 0; i < 7; ++i) EXPECT_DOUBLE_EQ(full.a[i], expected[i]);
  EXPECT_TRUE(validate(full).empty());

  for (double v : allocate(4, 3, 0).a) EXPECT_EQ(v, 0.0);
}

TEST(Allocate, HitsDensityEverywhere) {
  for (int k = 0; k <= 100; ++k) {
    const double d = k / 100.0;
    for (auto [n, m] : {std::pair{2, 2}, {4, 3}, {2, 7}, {10, 10}}) {
      const TrafficConfig c = allocate(n, m, d);
      ASSERT_TRUE(validate(c).empty()) << n << "," << m << " d=" << d;
      EXPECT_NEAR(derive(c).d, d, 1e-14);
    }
  }
}

TEST(Allocate, Errors) {
  EXPECT_THROW(allocate(4, 3, -0.1), DensityOutOfRange);
  EXPECT_THROW(allocate(4, 3, 1.01), DensityOutOfRange);
  EXPECT_THROW(allocate(1, 3, 0.5), InvalidConfig);
}

TEST(Config, ParseArcs) {
  const TrafficConfig c = parse_config(R"({"n":4,"m":3,"a":[0.3,0.1,0.2,0.2,0.1,0.2,0.4]})");
  EXPECT_EQ(c, nonuniform());
}

TEST(Config, ParseDensity) {
  const TrafficConfig c = parse_config(R"({"n":4,"m":3,"density":0.25,"convention":"DS"})");
  EXPECT_EQ(c.a, allocate(4, 3, 0.25).a);
  EXPECT_EQ(c.convention, Convention::DS);
}

TEST(Config, MissingField) {
  try {
    parse_config(R"({"n":4})");
    FAIL();
  } catch (const MissingField& e) {
    EXPECT_EQ(e.field(), "m");
  }
  EXPECT_THROW(parse_config(R"({"n":4,"m":3})"), MissingField);
}

TEST(Config, Malformed) {
  EXPECT_THROW(parse_config("{\"n\":4,"), ParseError);
  EXPECT_THROW(parse_config(R"({"n":"four","m":3,"density":0.2})"), ParseError);
  EXPECT_THROW(parse_config(R"({"n":4,"m":3,"a":[0.1],"density":0.2})"), ParseError);
  EXPECT_THROW(parse_config(R"({"n":4,"m":3,"density":0.2,"convention":"XX"})"), ParseError);
  EXPECT_THROW(parse_config("[1,2]"), ParseError);
}

TEST(Config, ConstraintViolationIsInvalidNotParse) {
  const std::string text = R"({"n":4,"m":3,"a":[0.3,0.1,0.2,0.7,0.1,0.2,0.7]})";
  EXPECT_THROW(parse_config(text), InvalidConfig);
  EXPECT_NO_THROW(parse_config_unvalidated(text));
}

TEST(Config, RoundTrip) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    TrafficConfig c = testing::random_config(3, 5, testing::uniform(rng, 0, 1), rng);
    c.convention = trial % 2 ? Convention::DS : Convention::EV;
    EXPECT_EQ(parse_config(serialize_config(c)), c);
  }
}

TEST(Convention, Names) {
  EXPECT_EQ(convention_from_string("EV"), Convention::EV);
  EXPECT_EQ(convention_from_string("DS"), Convention::DS);
  EXPECT_EQ(to_string(Convention::DS), "DS");
  EXPECT_THROW(convention_from_string("ev?"), ParseError);
}

}  // namespace
}  // namespace tropica
