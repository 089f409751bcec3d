#include <iostream>

#include "qbg/cli.hpp"

int main(int argc, char** argv) { return qbg::cli::main(argc, argv, std::cout, std::cerr); }
