#include <iostream>

#include "triband/cli.hpp"

int main(int argc, char** argv) {
  return triband::cli::main_entry(argc, argv, std::cout, std::cerr);
}
