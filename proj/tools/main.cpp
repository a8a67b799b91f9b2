#include "cli.hpp"

int main(int argc, char** argv) { return stp12::cli::run(argc, argv); }
