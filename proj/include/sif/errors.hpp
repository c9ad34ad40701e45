#pragma once

#include <stdexcept>
#include <string>

namespace sif {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// bad parameter values (grid size, radius, config fields)
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

// signals or operators living on different grids
class DimensionError : public Error {
public:
    using Error::Error;
};

// memory/time budgets, dense caps
class ResourceError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class FormatError : public IoError {
public:
    using IoError::IoError;
};

class VersionError : public FormatError {
public:
    using FormatError::FormatError;
};

class ChecksumError : public FormatError {
public:
    using FormatError::FormatError;
};

// exit code for the command line tool
int exit_code_for(const std::exception& e) noexcept;

} // namespace sif
