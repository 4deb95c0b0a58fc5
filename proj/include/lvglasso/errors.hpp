#pragma once

#include <stdexcept>
#include <string>

namespace lvglasso {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
    using Error::Error;
};

struct NotPositiveDefinite : Error {
    using Error::Error;
};

struct NumericalFailure : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace lvglasso
