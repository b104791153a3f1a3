#pragma once

#include <stdexcept>
#include <string>

namespace swcu {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// unreadable/missing/corrupt input data
struct IngestError : Error {
    using Error::Error;
};

// bad snapshot / answers / report files
struct FormatError : Error {
    using Error::Error;
};

// invalid hyperparameters or flag combinations
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace swcu
