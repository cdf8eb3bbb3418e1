#include "lch/cli.hpp"

int main(int argc, char** argv) { return lch::cli::run(argc, argv); }
