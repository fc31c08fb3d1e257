#include <gtest/gtest.h>

#include <set>

#include "qmat/verify.hpp"

using namespace qmat;

TEST(Verify, SuiteAtN2) {
  const auto rep = verify::run_suite(2);
  EXPECT_GE(rep.checks.size(), 25u);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.id << ": " << c.witness;
  std::set<std::string> ids;
  for (const auto& c : rep.checks) {
    EXPECT_TRUE(ids.insert(c.id).second) << "duplicate id " << c.id;
    EXPECT_FALSE(c.statement.empty());
  }
}

TEST(Verify, SuiteAtN3) {
  const auto rep = verify::run_suite(3);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.id << ": " << c.witness;
}

TEST(Verify, ReportIsDeterministic) {
  const auto a = verify::to_json(verify::run_suite(2), false).dump();
  const auto b = verify::to_json(verify::run_suite(2), false).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(verify::to_markdown(verify::run_suite(2), false), verify::to_markdown(verify::run_suite(2), false));
}

TEST(Verify, RefusesLargeN) {
  try {
    verify::run_suite(5);
    FAIL() << "expected ResourceLimit";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResourceLimit);
  }
}
