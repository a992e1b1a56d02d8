#include "cli.hpp"

int main(int argc, char** argv) { return mtgl::cli::dispatch(argc, argv); }
