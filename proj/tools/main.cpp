#include "cli.hpp"

int main(int argc, char** argv) { return m2wis::cli::run(argc, argv); }
