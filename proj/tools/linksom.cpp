#include <iostream>

#include "linksom/cli.hpp"

int main(int argc, char** argv) { return linksom::cli::run(argc, argv, std::cout, std::cerr); }
