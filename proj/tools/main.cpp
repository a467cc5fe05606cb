#include <iostream>

#include "duffing/cli.hpp"

int main(int argc, char** argv) {
  return duffing::cli::main_entry(argc, argv, std::cout, std::cerr);
}
