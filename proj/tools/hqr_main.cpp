#include "hqr_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hqr::cli::main_entry(args, std::cout, std::cerr);
}
