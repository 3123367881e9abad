#include "cli.hpp"

int main(int argc, char** argv) { return leafroot::cli::run(argc, argv, std::cout, std::cerr); }
