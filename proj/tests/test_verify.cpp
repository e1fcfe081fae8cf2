#include <gtest/gtest.h>

#include <sstream>

#include "rlab/verify.hpp"

using namespace rlab;

namespace {

RunConfig grid(std::initializer_list<int> ks) {
  RunConfig c;
  for (int k : ks) c.k_grid.emplace_back(k);
  c.record_runtime = false;
  return c;
}

void expect_all_pass(const std::vector<VerificationReport>& rs) {
  ASSERT_FALSE(rs.empty());
  for (const auto& r : rs) EXPECT_TRUE(r.pass) << r.check_id << " lhs=" << r.lhs << " rhs=" << r.rhs << " " << r.note;
}

}  // namespace

TEST(Config, GapValuesAreRejected) {
  for (int k : {0, 1, 5, 16}) {
    auto c = grid({k});
    EXPECT_THROW(verify_theorem(c), ConfigError) << k;
    EXPECT_THROW(verify_paths(Rational(k)), ConfigError) << k;
  }
  RunConfig c;
  c.k_grid = {Rational(-1, 2)};
  EXPECT_THROW(verify_regulator(c), ConfigError);
  EXPECT_NO_THROW(require_identity_range({Rational(-1), Rational(17), Rational(35, 2)}));
}

TEST(Config, ValidationRejectsBadValues) {
  RunConfig c;
  c.precision = 3;
  EXPECT_THROW(c.validate(), ConfigError);
  c.precision = 16;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.tolerance = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.jobs = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, FileParsing) {
  std::istringstream in(
      "# sample\n"
      "k-grid = -2, -5/2 , 18\n"
      "tol = 1e-7   # trailing comment\n"
      "precision=10\n"
      "\n"
      "jobs = 3\n");
  RunConfig c;
  apply_config(c, read_config_lines(in));
  ASSERT_EQ(c.k_grid.size(), 3u);
  EXPECT_EQ(c.k_grid[1], Rational(-5, 2));
  ASSERT_TRUE(c.tolerance);
  EXPECT_DOUBLE_EQ(*c.tolerance, 1e-7);
  EXPECT_EQ(c.precision, 10);
  EXPECT_EQ(c.jobs, 3u);

  std::istringstream unknown("speed = 9\n");
  EXPECT_THROW(read_config_lines(unknown), ConfigError);
  std::istringstream malformed("k -2\n");
  EXPECT_THROW(read_config_lines(malformed), ConfigError);
  EXPECT_THROW(parse_k_grid("1, x"), ConfigError);
  EXPECT_THROW(parse_k_grid(" , "), ConfigError);
}

TEST(Report, JsonSchema) {
  auto c = grid({-2});
  const auto rs = verify_theorem(c);
  const auto doc = report_document(c, rs);
  EXPECT_EQ(doc["version"], report_version);
  EXPECT_EQ(doc["config"]["kGrid"][0], "-2");
  ASSERT_EQ(doc["reports"].size(), rs.size());
  const auto& r = doc["reports"][0];
  std::vector<std::string> keys;
  for (const auto& [key, _] : r.items()) keys.push_back(key);
  const std::vector<std::string> expected{"checkId",  "inputs",      "lhs",  "rhs",       "absError", "relError",
                                          "tolerance", "multipliers", "pass", "runtimeMs"};
  ASSERT_GE(keys.size(), expected.size());
  EXPECT_TRUE(std::equal(expected.begin(), expected.end(), keys.begin()));
  EXPECT_TRUE(r["pass"].get<bool>());
  const auto csv = reports_csv(rs);
  EXPECT_EQ(csv.rfind("checkId,lhs,rhs,absError,tolerance,pass,multipliers,runtimeMs\n", 0), 0u);
}

TEST(Report, FailedChecksSerializeNullErrors) {
  VerificationReport r;
  r.check_id = "x";
  r.fail("no value");
  const auto j = to_json(r);
  EXPECT_TRUE(j["absError"].is_null());
  EXPECT_FALSE(j["pass"].get<bool>());
}

TEST(Determinism, JobsDoNotChangeOutput) {
  auto one = grid({-2, -5, 18, 25});
  auto many = one;
  many.jobs = 4;
  const auto a = report_document(one, verify_theorem(one));
  const auto b = report_document(many, verify_theorem(many));
  EXPECT_EQ(a["reports"].dump(), b["reports"].dump());
}

TEST(Verify, IdentityOnBothSides) { expect_all_pass(verify_theorem(grid({-1, -3, 17, 20}))); }

TEST(Verify, RegulatorRelations) {
  for (int k : {-1, -8, 20}) {
    const auto rs = verify_regulator_relations(Rational(k), grid({}));
    expect_all_pass(rs);
    for (const auto& r : rs)
      for (const auto& [name, v] : r.multipliers)
        if (name.rfind("q", 0) == 0) {
          EXPECT_NEAR(v, std::round(v), 1e-6) << r.check_id << " " << name;
        }
  }
}

TEST(Verify, Paths) {
  for (int k : {-1, -5, 17, 40}) expect_all_pass(verify_paths(Rational(k)));
}

TEST(Verify, Periods) {
  for (int k : {-2, -12, 18, 60}) expect_all_pass(verify_periods(Rational(k)));
}

TEST(Verify, Torsion) { expect_all_pass(verify_torsion(grid({-2, -3, 18, 25}))); }

TEST(Verify, LValueIdentities) {
  const auto rs = verify_corollary(grid({}));
  expect_all_pass(rs);
  EXPECT_TRUE(all_pass(rs));
}

TEST(Verify, AsymptoticRatioAddedForLargeK) {
  const auto rs = verify_theorem(grid({-200}));
  EXPECT_TRUE(std::any_of(rs.begin(), rs.end(),
                          [](const auto& r) { return r.check_id.rfind("theorem.asymptotic", 0) == 0 && r.pass; }));
}
