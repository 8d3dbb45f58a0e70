#include <gtest/gtest.h>

#include "smdp/errors.hpp"
#include "smdp/verify.hpp"

using namespace smdp;

TEST(Verify, ClauseGridSizes) {
  EXPECT_EQ(clause_grid(1, 3, 0, 3, true).size(), 15u);
  EXPECT_EQ(clause_grid(2, 3, 0, 3, true).size(), 1351u);
  EXPECT_EQ(clause_grid(4, 2, 1, 2, false).size(), 406u);
}

TEST(Verify, SmallSuitesPass) {
  VerifyOptions o;
  o.cases = 5;
  for (const auto& name : suite_names()) {
    if (name == "thm1" || name == "thm9") continue;
    const auto rep = run_suite(name, o);
    EXPECT_EQ(rep.rows.size(), name == "thm6" ? 21u : 5u) << name;
    for (const auto& row : rep.rows) EXPECT_TRUE(row.pass) << name << " " << row.id << ": " << row.got;
  }
}

TEST(Verify, SmallGridSuites) {
  VerifyOptions o;
  o.n = 1;
  const auto thm1 = verify_thm1(o);
  EXPECT_EQ(thm1.rows.size(), 15u);
  EXPECT_TRUE(thm1.ok());
  const auto thm9 = verify_thm9(o);
  EXPECT_EQ(thm9.rows.size(), clause_grid(2, 2, 1, 2, false).size());
  EXPECT_TRUE(thm9.ok());
}

TEST(Verify, UnknownSuite) { EXPECT_THROW(run_suite("thm2", {}), Error); }
