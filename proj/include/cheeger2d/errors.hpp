#pragma once

#include <stdexcept>
#include <string>

namespace cheeger2d {

// Base class for all library failures.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed polygon or boundary chain.
struct invalid_region : error {
    using error::error;
};

// Erosion past the inradius (caller should use inradius_highridge for the limit).
struct degenerate_erosion : error {
    using error::error;
};

// Point or parameter outside the admissible domain of an operation.
struct out_of_domain : error {
    using error::error;
};

// Field evaluation requested where the calibration field is not constructed.
struct field_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

} // namespace cheeger2d
