#include <iostream>

#include "dfab_tools/cli.hpp"

int main(int argc, char** argv) { return dfab::cli::run(argc, argv, std::cout, std::cerr); }
