#include <iostream>
#include <string>
#include <vector>

#include "slowsync/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return slowsync::cli_run(std::move(args), std::cin, std::cout, std::cerr);
}
