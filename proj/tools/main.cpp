#include <iostream>

#include "jetham/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return jetham::run(args, std::cout, std::cerr);
}
