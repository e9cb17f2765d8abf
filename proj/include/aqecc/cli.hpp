#pragma once

#include <string>
#include <vector>

namespace aqecc {

// Exit status: 0 success, 1 domain or data error, 2 usage error.
int cli_dispatch(int argc, char** argv);
// Same, with args excluding the program name.
int cli_dispatch(const std::vector<std::string>& args);

} // namespace aqecc
