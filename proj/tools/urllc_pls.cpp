#include <iostream>
#include <string>
#include <vector>

#include "urllc/cli/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return urllc::cli::run(args, std::cout, std::cerr);
}
