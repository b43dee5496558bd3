#include "optpart/cli.hpp"

int main(int argc, char** argv) { return optpart::cli_main(argc, argv); }
