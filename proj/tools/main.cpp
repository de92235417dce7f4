#include "cli.hpp"

int main(int argc, char** argv) { return lionman::cli::run(argc, argv); }
