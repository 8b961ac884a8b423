#include <iostream>

#include "multispread/cli.hpp"

int main(int argc, char** argv) { return mspread::cli::run(argc, argv, std::cout, std::cerr); }
