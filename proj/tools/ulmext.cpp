#include <iostream>

#include "ulmext/cli/app.hpp"

int main(int argc, char** argv) { return ulmext::cli::run_cli(argc, argv, std::cout, std::cerr, std::cin); }
