#include "minstate/cli.hpp"

int main(int argc, char** argv) { return minstate::cli_main(argc, argv); }
