#include <iostream>
#include <vector>

#include "liespray/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return liespray::run_cli(args, std::cout, std::cerr);
}
