#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rtmix/errors.hpp"

namespace rtmix::cli {

enum Exit : int {
  Ok = 0,
  Negative = 1,      // infeasible, unbounded, not schedulable
  BadInput = 2,
  Limit = 3,         // overflow or budget
  VerifyFailed = 4,  // --verify mismatch or internal invariant
};

int exit_code(ErrorKind kind);

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rtmix::cli
