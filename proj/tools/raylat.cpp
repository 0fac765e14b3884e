#include "raylat/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return raylat::run_cli(argc, argv, std::cout, std::cerr); }
