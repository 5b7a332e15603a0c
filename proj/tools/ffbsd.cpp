#include "ffbsd/cli/app.hpp"

int main(int argc, char** argv) { return ffbsd::cli::run(argc, argv); }
