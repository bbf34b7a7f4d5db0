#include "nilcohom/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nilcohom::run(argc, argv, std::cout, std::cerr); }
