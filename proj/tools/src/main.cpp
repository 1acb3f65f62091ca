#include "nppe/cli.hpp"

int main(int argc, char** argv) { return nppe::cli::run(argc, argv); }
