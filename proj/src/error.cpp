#include "sparsecsp/error.hpp"

namespace sparsecsp {

ParseError::ParseError(int line, const std::string &message)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                     : message),
      line_(line) {}

} // namespace sparsecsp
