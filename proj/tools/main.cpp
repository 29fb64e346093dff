#include <iostream>

#include "hypharm/cli.hpp"

int main(int argc, char** argv) {
  return hypharm::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
