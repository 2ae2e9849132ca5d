#pragma once

#include <stdexcept>
#include <string>

namespace psmod1 {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

/// A documented precondition of an operation was violated.
class ContractError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "contract"; }
};

/// n^gamma could not be separated from an integer even at high precision.
class BoundaryError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "unresolvable_boundary"; }
};

/// Prime cache I/O, checksum or version failure.
class CacheError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "cache"; }
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ContractError(what);
}

}  // namespace psmod1
