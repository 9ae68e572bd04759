#include <iostream>

#include "sketchlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sketchlab::run_command(args, std::cout, std::cerr);
}
