#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace udc::cli {

// args excludes the program name. Returns 0, 1 (domain error, JSON on err) or 2 (usage).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// UDC_DEFAULT_BITS if set and valid, else 256.
int default_bits();

}  // namespace udc::cli
