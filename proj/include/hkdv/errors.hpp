#pragma once

#include <stdexcept>
#include <string>

namespace hkdv {

/// Root of every exception thrown by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument does not hold.
struct invalid_argument : error {
    using error::error;
};

/// Two fields or a field and a trajectory live on different grids.
struct grid_mismatch : error {
    using error::error;
};

/// A field is not small enough near the box edges for the line-to-torus truncation.
struct decay_violation : error {
    using error::error;
};

/// The requested weight orientation and time direction give a growing symbol.
struct unstable_conjugation : error {
    using error::error;
};

/// Malformed or unreadable serialized data.
struct io_error : error {
    using error::error;
};

/// Invalid experiment configuration; `field` names the offending key.
struct config_error : error {
    config_error(const std::string& field, const std::string& what)
        : error(field + ": " + what), field(field) {}
    std::string field;
};

}  // namespace hkdv
