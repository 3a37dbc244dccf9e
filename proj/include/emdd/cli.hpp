#ifndef EMDD_CLI_HPP
#define EMDD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace emdd {

// Exit codes: 0 success, 2 usage error, 3 capacity exceeded, 4 data error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace emdd

#endif
