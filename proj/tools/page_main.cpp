#include "page/cli.hpp"

int main(int argc, char** argv) {
    return page::cli_main(argc, argv);
}
