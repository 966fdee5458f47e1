#include <iostream>

#include "qlp/cli.hpp"

int main(int argc, char** argv) { return qlp::cli::main_entry(argc, argv, std::cout, std::cerr); }
