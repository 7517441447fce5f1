#include <iostream>
#include <string>
#include <vector>

#include "trif/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return trif::run_cli(std::move(args), std::cout, std::cerr);
}
