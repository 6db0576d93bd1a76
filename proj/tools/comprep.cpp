#include <iostream>
#include <string>
#include <vector>

#include "comprep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return comprep::run(args, std::cout, std::cerr);
}
