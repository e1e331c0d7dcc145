#include <iostream>

#include "fpois/cli.hpp"

int main(int argc, char** argv) { return fpois::cli::run(argc, argv, std::cout, std::cerr); }
