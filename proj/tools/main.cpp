#include "cli.hpp"

int main(int argc, char** argv) { return chainmail::cli::run(argc, argv, std::cout, std::cerr); }
