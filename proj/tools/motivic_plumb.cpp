#include <iostream>

#include "mplumb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mplumb::run(args, std::cout, std::cerr);
}
