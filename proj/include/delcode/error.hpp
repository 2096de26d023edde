#pragma once

#include <stdexcept>
#include <string>

namespace delcode {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid (delta, ell, n), info lengths, probabilities, out-of-range positions.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Received string whose length cannot come from <= delta deletions per block.
class MalformedInputError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Strict decoding produced a count outside [0, delta].
class DesyncError : public Error {
public:
    using Error::Error;
};

// Enumeration cap exceeded, or an info word does not fit the stuffing budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Constrained sampler could not produce a codeword.
class SamplingError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace delcode
