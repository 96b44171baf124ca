#include "vss/cli.hpp"

int main(int argc, char** argv) { return vss::run_cli(argc, argv); }
