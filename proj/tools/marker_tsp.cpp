#include <iostream>
#include <string>
#include <vector>

#include "marker_tsp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return marker_tsp::cli::run(args, std::cout, std::cerr);
}
