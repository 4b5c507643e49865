#include <iostream>
#include <string>
#include <vector>

#include "ldsl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ldsl::cli::run(args, std::cout, std::cerr);
}
