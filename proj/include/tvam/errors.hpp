#pragma once

#include <stdexcept>
#include <string>

namespace tvam {

struct shape_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parameter_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_geometry_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// FISTA produced a non-finite objective; carries the offending iteration.
struct divergence_error : std::runtime_error {
    int iteration;
    divergence_error(const std::string& msg, int iter)
        : std::runtime_error(msg), iteration(iter) {}
};

// OSMO sinogram clamped to an all-zero matrix; normalisation is undefined.
struct collapse_error : std::runtime_error {
    int iteration;
    collapse_error(const std::string& msg, int iter)
        : std::runtime_error(msg), iteration(iter) {}
};

struct selection_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct corrupt_sidecar_error : io_error {
    using io_error::io_error;
};

struct version_error : io_error {
    using io_error::io_error;
};

} // namespace tvam
