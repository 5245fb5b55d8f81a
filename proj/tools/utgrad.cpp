#include <iostream>

#include "utgrad/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return utgrad::run(args, std::cout, std::cerr);
}
