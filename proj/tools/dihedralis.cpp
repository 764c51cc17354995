#include "dihedralis/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dihedralis::cli::run(argc, argv, std::cout, std::cerr); }
