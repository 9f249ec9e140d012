#include <iostream>

#include "moa/study.hpp"

int main(int argc, char** argv) { return moa::run_cli(argc, argv, std::cout, std::cerr); }
