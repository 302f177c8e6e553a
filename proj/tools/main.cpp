#include "stark/cli.hpp"

int main(int argc, char** argv) { return stark::run_cli(argc, argv); }
