#include <iostream>

#include "maxface/cli.hpp"

int main(int argc, char** argv) { return maxface::cli::run(argc, argv, std::cout, std::cerr); }
