#include <iostream>
#include <vector>

#include "hypack/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hypack::runCli(std::move(args), std::cout, std::cerr);
}
