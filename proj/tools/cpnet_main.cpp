#include <iostream>

#include "cpnet/cli.hpp"

int main(int argc, char** argv) { return cpnet::cli::run(argc, argv, std::cout, std::cerr); }
