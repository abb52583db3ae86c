#include <iostream>
#include <string>
#include <vector>

#include "galmod/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return galmod::cli::run(args, std::cout, std::cerr);
}
