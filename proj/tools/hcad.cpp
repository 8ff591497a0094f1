#include <iostream>

#include "hcad/cli.hpp"

int main(int argc, char** argv) { return hcad::cli::run(argc, argv, std::cout, std::cerr); }
