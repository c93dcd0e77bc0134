#include "glasso/cli.hpp"

int main(int argc, char** argv) { return glasso::cli::run(argc, argv); }
