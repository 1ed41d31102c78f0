#include <iostream>

#include "flipwide/cli.hpp"

int main(int argc, char** argv) {
  return flipwide::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
