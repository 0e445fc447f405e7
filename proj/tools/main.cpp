#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return recordlab::cli::run(argc, argv, std::cout, std::cerr);
}
