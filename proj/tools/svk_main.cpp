#include "svk/runner.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return svk::cli::main_entry(argc, argv, std::cout, std::cerr);
}
