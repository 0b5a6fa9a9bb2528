#include <iostream>

#include "vmod/cli.hpp"

int main(int argc, char** argv) { return vmod::cli::run(argc, argv, std::cout, std::cerr); }
