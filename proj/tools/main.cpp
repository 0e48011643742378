#include "cli.hpp"

int main(int argc, char** argv) { return mogp::cli::run_cli(argc, argv); }
