#include <iostream>

#include "percolab/cli.hpp"

int main(int argc, char** argv) { return percolab::run_cli(argc, argv, std::cout, std::cerr); }
