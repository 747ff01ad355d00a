#include "navfield/errors.hpp"

namespace navfield {

namespace {

std::string format_parse_message(const std::string& source, std::size_t line,
                                 const std::string& message) {
  std::string out = source;
  if (line > 0) out += ":" + std::to_string(line);
  out += ": " + message;
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& message)
    : std::runtime_error(format_parse_message(source, line, message)), line_(line) {}

}  // namespace navfield
