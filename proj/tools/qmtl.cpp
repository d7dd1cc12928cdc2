#include <iostream>

#include "qmtl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qmtl::cli::run(args, std::cout, std::cerr);
}
