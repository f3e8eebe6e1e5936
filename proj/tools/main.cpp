#include "seqmine/cli.hpp"

int main(int argc, char** argv) { return seqmine::run_cli(argc, argv); }
