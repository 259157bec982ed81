#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return sigmak::cli::main_with(argc, argv, std::cin, std::cerr);
}
