#include <iostream>

#include "simplex_angles/cli.hpp"

int main(int argc, char** argv) {
  return simplex_angles::run_cli(argc, argv, std::cout, std::cerr);
}
