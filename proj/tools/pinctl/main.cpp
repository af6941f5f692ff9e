#include <iostream>
#include <string>
#include <vector>

#include "pinctl/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pinctl::cli::run(args, std::cout, std::cerr);
}
