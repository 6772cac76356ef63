#include "g2flow/report.hpp"

#include <iostream>

int main(int argc, char** argv) { return g2flow::run_cli(argc, argv, std::cout, std::cerr); }
