#include "anticomm/errors.hpp"

#include <fmt/format.h>

namespace anticomm {

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(line == 0 ? what : fmt::format("line {}: {}", line, what)), line_(line) {}

}  // namespace anticomm
