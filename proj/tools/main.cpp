#include "coronalab/cli.hpp"

int main(int argc, char** argv) { return coronalab::cli::run(argc, argv); }
