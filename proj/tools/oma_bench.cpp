#include "omabench/cli.hpp"

int main(int argc, char** argv) { return omabench::run_cli(argc, argv); }
