#pragma once

#include <stdexcept>
#include <string>

namespace phrasecom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input files (corpus, gold labels, config, index).
class InputError : public Error {
public:
    using Error::Error;
};

/// Unknown document or phrase identifiers.
class LookupError : public Error {
public:
    using Error::Error;
};

/// Parameter combinations rejected before any work starts.
class ParameterError : public Error {
public:
    using Error::Error;
};

}  // namespace phrasecom
