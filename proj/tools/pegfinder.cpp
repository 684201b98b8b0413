#include "pegfinder/cli.hpp"

int main(int argc, char** argv) { return pegfinder::run_cli(argc, argv); }
