#include <iostream>
#include <string>
#include <vector>

#include "hypermode/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hypermode::cli::run(args, std::cout, std::cerr);
}
