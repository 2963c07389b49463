#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace adtrw::acceptance {

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;  // 0 means no runtime bound
};

/// Runs the selected criteria (all when `only` is empty) in order.
std::vector<Result> run(const std::vector<int>& only = {});

/// One line per result plus a summary line.
void print(std::ostream& os, const std::vector<Result>& results);

bool all_passed(const std::vector<Result>& results);

}  // namespace adtrw::acceptance
