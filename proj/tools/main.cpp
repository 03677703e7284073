#include <fsjet/cli.hpp>

#include <iostream>

int main(int argc, char **argv)
{
    return fsjet::run_cli(argc, argv, std::cout, std::cerr);
}
