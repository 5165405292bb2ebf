#include "echcap/cli_app.hpp"

int main(int argc, char** argv) { return echcap::run_cli(argc, argv); }
