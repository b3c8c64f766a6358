#pragma once

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "mmspace/error.h"
#include "mmspace/json_io.h"

#define EXPECT_MM_ERROR(stmt, expected)                                  \
  do {                                                                   \
    try {                                                                \
      stmt;                                                              \
      ADD_FAILURE() << "no exception from " #stmt;                       \
    } catch (const mmspace::Error& e) {                                  \
      EXPECT_EQ(e.code(), expected) << e.what();                         \
    }                                                                    \
  } while (0)

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;

  mmspace::Json json() const { return mmspace::Json::parse(out); }
};

inline CliResult run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  CliResult r;
  r.code = mmspace::run_cli(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}
