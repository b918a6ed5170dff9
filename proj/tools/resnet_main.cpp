#include <iostream>

#include "resnet/cli.hpp"

int main(int argc, char** argv) { return resnet::cli::run(argc, argv, std::cout, std::cerr); }
