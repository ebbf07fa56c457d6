#include <iostream>

#include "mvdl/cli.hpp"

int main(int argc, char** argv) { return mvdl::cli::main(argc, argv, std::cout, std::cerr); }
