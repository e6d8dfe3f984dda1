#include "ctl/cli.hpp"

int main(int argc, char** argv) { return ctl::run_cli(argc, argv); }
