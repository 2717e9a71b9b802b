#include <iostream>

#include "xychain/cli.hpp"

int main(int argc, char** argv) {
  return xychain::cli::run(argc, argv, std::cout, std::cerr);
}
