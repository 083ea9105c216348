#include "qfree/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qfree::cli::run(argc, argv, std::cout, std::cerr); }
