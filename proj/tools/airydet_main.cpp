#include "airydet/cli_io.hpp"

int main(int argc, char** argv) { return airydet::cli_io::run_main(argc, argv); }
