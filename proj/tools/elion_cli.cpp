#include "elion/app/commands.hpp"

int main(int argc, char** argv) { return elion::app::run_cli(argc, argv); }
