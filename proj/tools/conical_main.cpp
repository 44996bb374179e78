#include <iostream>

#include "conical/cli.hpp"

int main(int argc, char** argv) { return conical::cli::run_cli(argc, argv, std::cout, std::cerr); }
