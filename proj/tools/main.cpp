#include <iostream>

#include "relight/app/cli.hpp"

int main(int argc, char** argv) {
    return relight::run_cli(argc, argv, std::cout, std::cerr);
}
