#include <iostream>
#include <string>
#include <vector>

#include "fairdiv/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fairdiv::run_cli(args, std::cout, std::cerr);
}
