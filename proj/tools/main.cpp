#include <iostream>
#include <string>
#include <vector>

#include "trafficlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return trafficlab::cli::run(args, std::cout, std::cerr);
}
