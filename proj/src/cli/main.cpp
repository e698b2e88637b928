#include <iostream>

#include "pillars/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pillars::cli::run_cli(args, std::cout, std::cerr);
}
