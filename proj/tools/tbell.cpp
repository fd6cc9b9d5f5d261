#include <iostream>

#include "tbell/sweep.hpp"

int main(int argc, char** argv) {
    return tbell::cli::run(argc, argv, std::cout, std::cerr);
}
