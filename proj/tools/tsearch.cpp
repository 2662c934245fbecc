#include <iostream>

#include "tsearch_cli.hpp"

int main(int argc, char** argv) { return tsearch::cli::run(argc, argv, std::cout, std::cerr); }
