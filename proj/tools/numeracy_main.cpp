#include <iostream>

#include "numeracy/cli.hpp"

int main(int argc, char** argv) { return numeracy::run_cli(argc, argv, std::cout, std::cerr); }
