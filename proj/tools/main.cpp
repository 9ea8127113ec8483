#include "nevacc_cli.hpp"

int main(int argc, char** argv)
{
    return nevacc::cli::run_cli(argc, argv, std::cout, std::cerr);
}
