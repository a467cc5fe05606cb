// Build-time generator: runs the exact derivation and writes the coefficient
// translation unit consumed by the numeric library.
//
//   derive_tables <out.cpp> [<report.txt>]

#include <fstream>
#include <iostream>

#include "duffing/derivation.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: derive_tables <out.cpp> [<report.txt>]\n";
    return 2;
  }
  const auto tables = duffing::algebra::derive_tables();
  std::ofstream src(argv[1]);
  src << duffing::algebra::coefficient_source(tables);
  if (!src) {
    std::cerr << "derive_tables: cannot write " << argv[1] << "\n";
    return 1;
  }
  if (argc > 2) {
    std::ofstream report(argv[2]);
    report << duffing::algebra::tables_report(tables);
  }
  return 0;
}
