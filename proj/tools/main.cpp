#include "sp/cli/run.hpp"

int main(int argc, char** argv) { return sp::cli::run_cli(argc, argv); }
