#include "calabiflow/io.hpp"

int main(int argc, char** argv) { return calabiflow::cli(argc, argv); }
