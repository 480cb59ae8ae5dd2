#include <iostream>

#include "dimens/cli.hpp"

int main(int argc, char** argv) { return dimens::cli::run(argc, argv, std::cout, std::cerr); }
