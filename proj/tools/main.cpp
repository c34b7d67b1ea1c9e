#include "mielab/cli.hpp"

int main(int argc, char** argv) { return mielab::run_cli(argc, argv); }
