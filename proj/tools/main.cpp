#include "sqz/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return sqz::run_cli(argc, argv, std::cout, std::cerr);
}
