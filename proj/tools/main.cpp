#include <iostream>
#include <string>
#include <vector>

#include "zaktp/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return zaktp::parse_and_run(args, std::cout, std::cerr);
}
