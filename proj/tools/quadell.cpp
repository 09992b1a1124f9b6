#include <quadell/cli.hpp>

int main(int argc, char** argv) { return quadell::run_cli(argc, argv); }
