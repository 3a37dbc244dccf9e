#ifndef EMDD_ERRORS_HPP
#define EMDD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace emdd {

// Instance exceeds a configured memory or search budget.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input data (files, inline distributions).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Distributions in a tuple disagree on total mass.
struct MassMismatchError : DataError {
    explicit MassMismatchError(const std::string& what) : DataError(what) {}
};

// Distributions disagree on bin count where a common one is required.
struct ShapeMismatchError : DataError {
    explicit ShapeMismatchError(const std::string& what) : DataError(what) {}
};

}  // namespace emdd

#endif
