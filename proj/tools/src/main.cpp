#include <iostream>
#include <string>
#include <vector>

#include "extropy_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return extropy_cli::run(args, std::cout, std::cerr);
}
