#include "excel/cli.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    excel::cli::Context ctx{std::cin, std::cout, std::cerr, std::nullopt, excel::cli::system_now};
    if (const char* store = std::getenv("EXCEL_STORE")) ctx.default_store = store;
    return excel::cli::run(args, ctx);
}
