#pragma once

#include <stdexcept>
#include <string>

namespace urel {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside the physical domain (rho <= 0, |v| >= 1, S <= 0, bad gamma, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Inverse requested outside the range of a tabulated map.
class RangeError : public Error {
public:
    using Error::Error;
};

// Conserved vector with no admissible primitive preimage.
class DecodeError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace urel
