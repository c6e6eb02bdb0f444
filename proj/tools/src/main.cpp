#include <iostream>

#include "deflekt_cli/cli.hpp"

int main(int argc, char** argv) { return deflekt::cli::run_cli(argc, argv, std::cout, std::cerr); }
