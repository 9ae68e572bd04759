#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "golden.hpp"

// SKETCHLAB_REGEN_GOLDEN=1 rewrites the .json files from the current output.
TEST(Golden, Cli) {
  auto cases = golden::load();
  ASSERT_GE(cases.size(), 30u);
  bool regen = std::getenv("SKETCHLAB_REGEN_GOLDEN") != nullptr;
  for (const auto& c : cases) {
    auto r = golden::run(c.args);
    EXPECT_EQ(r.exit_code, c.exit_code) << c.name;
    if (regen) {
      std::ofstream(golden::dir() + "/" + c.name + ".json", std::ios::binary) << r.out;
      continue;
    }
    EXPECT_EQ(r.out, c.expected) << c.name;
    if (golden::is_models(c)) {
      EXPECT_EQ(golden::run(golden::with_workers(c.args, 1)).out, c.expected) << c.name;
      EXPECT_EQ(golden::run(golden::with_workers(c.args, 4)).out, c.expected) << c.name;
    }
  }
}

TEST(Golden, BudgetFromEnvironment) {
  setenv("SKETCHLAB_BUDGET", "0", 1);
  auto r = golden::run({"rounded", "corpus:TERM"});
  unsetenv("SKETCHLAB_BUDGET");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(golden::run({"rounded", "corpus:TERM"}).exit_code, 0);
}
