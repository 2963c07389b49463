#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::stoi(argv[i]));
  const auto results = adtrw::acceptance::run(only);
  adtrw::acceptance::print(std::cout, results);
  return adtrw::acceptance::all_passed(results) ? EXIT_SUCCESS : EXIT_FAILURE;
}
