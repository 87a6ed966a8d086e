#include <iostream>

#include "witness/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return witness::run(args, std::cout, std::cerr);
}
