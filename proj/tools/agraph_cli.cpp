// agraph - edge structure of finite idempotent algebras
//
// Command-line entry point.

#include <iostream>  // for cout, cerr
#include <string>    // for string
#include <vector>    // for vector

#include "agraph/cli.hpp"  // for run_cli

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return agraph::run_cli(args, std::cout, std::cerr);
}
