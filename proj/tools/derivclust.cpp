#include <iostream>

#include "derivclust/cli.hpp"

int main(int argc, char** argv) { return derivclust::run_cli(argc, argv, std::cout, std::cerr); }
