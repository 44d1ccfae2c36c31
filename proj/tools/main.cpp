#include "qdspin/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return qdspin::cli::run(argc, argv, std::cout, std::cerr);
}
