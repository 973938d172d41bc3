#include "hplateau/cli.hpp"

int main(int argc, char** argv) { return hplateau::run_cli(argc, argv); }
