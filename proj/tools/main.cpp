#include "adaptive_pool/cli.hpp"

int main(int argc, char** argv) { return adaptive_pool::run_cli(argc, argv); }
