#pragma once

#include <stdexcept>
#include <string>

namespace spamnet {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dimension disagreement between a network and its inputs/targets.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Invalid trainer or experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Model file problems carry a code so callers can distinguish a stale
// schema from a corrupted payload.
class ModelIoError : public Error {
public:
    enum class Code { io, malformed, version_mismatch, checksum_mismatch };

    ModelIoError(Code code, const std::string& what) : Error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

// CSV corpus problems; line is 1-based, 0 when not tied to a line.
class CsvError : public Error {
public:
    CsvError(const std::string& what, std::size_t line = 0) : Error(what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class UrlParseError : public Error {
public:
    using Error::Error;
};

// Metric undefined because a class is absent from the evaluated set.
class MetricError : public Error {
public:
    using Error::Error;
};

// Model feature schema does not match the supplied corpus.
class SchemaError : public Error {
public:
    using Error::Error;
};

} // namespace spamnet
