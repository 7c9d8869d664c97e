#include <iostream>
#include <string>
#include <vector>

#include "mvote/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mvote::cli::run(args, std::cout, std::cerr);
}
