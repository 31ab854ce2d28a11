#include "algser/cli.hpp"

int main(int argc, char** argv) { return algser::cli::run(argc, argv); }
