#include "heckemod/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return heckemod::cli::run_cli(argc, argv, std::cout, std::cerr); }
