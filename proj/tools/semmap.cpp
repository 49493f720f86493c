#include <iostream>

#include "semmap/cli.hpp"

int main(int argc, char** argv) {
  return semmap::run_cli(argc, argv, std::cout, std::cerr);
}
