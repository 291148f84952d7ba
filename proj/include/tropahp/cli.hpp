#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropahp {

// Exit codes: 0 success, 1 validation or input error, 2 usage error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropahp
