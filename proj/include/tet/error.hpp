#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tet {

/// Error classes surfaced through the C API as stable codes.
enum class ErrorKind {
    invalid_argument,
    unknown_node,
    parse,
    io,
    convergence,
    out_of_range,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace tet
