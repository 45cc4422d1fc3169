#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pilkit {

/// Base class for all pilkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite entries or degenerate dimensions where a valid matrix is required.
class InvalidMatrixError : public Error {
public:
    using Error::Error;
};

/// Operand shapes are incompatible.
class ShapeMismatchError : public Error {
public:
    using Error::Error;
};

/// Value outside the mathematical domain of an operation (e.g. ArcTanh of 1).
class DomainError : public Error {
public:
    using Error::Error;
};

/// File could not be opened or read.
class IoError : public Error {
public:
    using Error::Error;
};

/// A cell failed to parse; carries its 0-based row/column position.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t col)
        : Error(what), row_(row), col_(col) {}
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

/// Input contained no data rows.
class EmptyDatasetError : public Error {
public:
    using Error::Error;
};

/// A target label is not covered by the declared class set.
class UnknownClassError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration value or combination.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed serialized payload; carries the byte offset of the defect.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what, std::size_t offset = 0)
        : Error(what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace pilkit
