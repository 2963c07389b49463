#include "adtrw/error.hpp"

namespace adtrw {

void throw_invalid(const std::string& what) { throw InvalidArgument(what); }

}  // namespace adtrw
