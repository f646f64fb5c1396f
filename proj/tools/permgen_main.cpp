#include <iostream>

#include "permgen/cli.hpp"

int main(int argc, char** argv) { return permgen::cli::run(argc, argv, std::cout, std::cerr); }
