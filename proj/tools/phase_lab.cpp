#include <iostream>

#include "phaselab/cli.hpp"

int main(int argc, char** argv) {
  return phaselab::cli::main_entry(argc, argv, std::cout, std::cerr);
}
