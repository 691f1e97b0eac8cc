#include <iostream>

#include "cassini/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cassini::run(args, std::cout, std::cerr);
}
