#include <iostream>

#include "sbmc/cli.h"

int main(int argc, char** argv) {
  return sbmc::cli::main_entry(argc, argv, std::cout, std::cerr);
}
