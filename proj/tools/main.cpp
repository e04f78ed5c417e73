#include "axisym/cli.hpp"

int main(int argc, char** argv) { return axisym::cli_main(argc, argv); }
