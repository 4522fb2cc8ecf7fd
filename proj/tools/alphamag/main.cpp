#include <iostream>

#include "alphamag/cli.hpp"

int main(int argc, char** argv) { return alphamag::cli::run_cli(argc, argv, std::cout, std::cerr); }
