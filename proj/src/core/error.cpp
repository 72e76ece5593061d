#include "tet/error.hpp"

namespace tet {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_argument: return "invalid_argument";
        case ErrorKind::unknown_node: return "unknown_node";
        case ErrorKind::parse: return "parse_error";
        case ErrorKind::io: return "io_error";
        case ErrorKind::convergence: return "convergence_error";
        case ErrorKind::out_of_range: return "out_of_range";
    }
    return "unknown";
}

}  // namespace tet
