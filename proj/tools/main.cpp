#include <iostream>

#include "lrcw/cli.hpp"

int main(int argc, char** argv) { return lrcw::cli::main(argc, argv, std::cout, std::cerr); }
