#include <iostream>
#include <string>
#include <vector>

#include "lstar/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return lstar::cli::run(args, std::cout, std::cerr);
}
