#include <iostream>
#include <string>
#include <vector>

#include "xq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return xq::run_command(args, std::cout, std::cerr);
}
