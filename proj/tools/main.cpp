#include "blochpoly/cli.hpp"

int main(int argc, char **argv) { return blochpoly::run_cli(argc, argv); }
