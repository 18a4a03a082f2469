#include <iostream>

#include "hbd/cli.hpp"

int main(int argc, char** argv) { return hbd::cli::run(argc, argv, std::cout, std::cerr); }
