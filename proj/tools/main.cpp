#include <iostream>
#include <string>
#include <vector>

#include <umbral/cli.hpp>

int main(int argc, char **argv)
{
    return umbral::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
