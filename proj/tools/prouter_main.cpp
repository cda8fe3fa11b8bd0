#include <iostream>

#include "prouter/cli.hpp"

int main(int argc, char** argv) { return prouter::cli::main(argc, argv, std::cout, std::cerr); }
