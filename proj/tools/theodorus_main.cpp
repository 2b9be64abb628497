#include "theodorus/cli_app.hpp"

int main(int argc, char** argv) { return theodorus::run_cli(argc, argv); }
