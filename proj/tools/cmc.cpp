#include "cmc/cli.hpp"

int main(int argc, char** argv) { return cmc::dispatch(argc, argv); }
