#include <iostream>

#include "imreg_cli/cli.hpp"

int main(int argc, char** argv) { return imreg::cli::run_cli(argc, argv, std::cout, std::cerr); }
