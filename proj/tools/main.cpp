#include <iostream>

#include "aco/bench.hpp"

int main(int argc, char** argv) { return aco::run_cli(argc, argv, std::cout, std::cerr); }
