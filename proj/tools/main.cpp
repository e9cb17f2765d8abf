#include "aqecc/cli.hpp"

int main(int argc, char** argv)
{
    return aqecc::cli_dispatch(argc, argv);
}
