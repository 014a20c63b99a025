#include "commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    const procat::cli::Outcome r = procat::cli::run(std::vector<std::string>(argv + 1, argv + argc));
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
