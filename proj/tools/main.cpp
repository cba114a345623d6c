#include "bousslyap/cli_main.hpp"

int main(int argc, char** argv) { return bousslyap::cli_main(argc, argv); }
