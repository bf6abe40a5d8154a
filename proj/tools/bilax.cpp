#include <iostream>

#include "bilax/cli.hpp"

int main(int argc, char** argv) { return bilax::cli::run(argc, argv, std::cout, std::cerr); }
