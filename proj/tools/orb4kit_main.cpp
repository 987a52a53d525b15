#include <iostream>
#include <string>
#include <vector>

#include "orb4/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return orb4::cli::run(args, std::cout, std::cerr);
}
