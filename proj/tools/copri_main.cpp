#include <iostream>
#include <string>
#include <vector>

#include "copri/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return copri::cli::run(std::move(args), std::cout, std::cerr);
}
