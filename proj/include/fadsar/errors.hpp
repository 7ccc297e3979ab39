#pragma once

#include <stdexcept>
#include <string>

namespace fadsar {

// Error classes map to distinct CLI exit codes: io=2, schema=3, config=4.
enum class ErrorKind { Io = 2, Schema = 3, Config = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(ErrorKind::Io, msg) {}
};

class UnsupportedFormatError : public Error {
public:
    explicit UnsupportedFormatError(const std::string& msg) : Error(ErrorKind::Schema, msg) {}
};

class ChannelDimensionMismatchError : public Error {
public:
    explicit ChannelDimensionMismatchError(const std::string& msg) : Error(ErrorKind::Schema, msg) {}
};

// Malformed or incomplete structured document (manifest, annotation JSON, ...).
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& msg) : Error(ErrorKind::Schema, msg) {}
};

class CsvSchemaError : public Error {
public:
    explicit CsvSchemaError(const std::string& msg) : Error(ErrorKind::Schema, msg) {}
};

// Carries the 1-based data-row index (header excluded).
class RowParseError : public Error {
public:
    RowParseError(long long row, const std::string& msg)
        : Error(ErrorKind::Schema, "row " + std::to_string(row) + ": " + msg), row_(row) {}

    long long row() const { return row_; }

private:
    long long row_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(ErrorKind::Config, msg) {}
};

// Synthetic-scene spec that cannot be satisfied (e.g. impossible placement).
class SpecError : public Error {
public:
    explicit SpecError(const std::string& msg) : Error(ErrorKind::Config, msg) {}
};

class MissingAuxiliaryError : public Error {
public:
    explicit MissingAuxiliaryError(const std::string& msg) : Error(ErrorKind::Config, msg) {}
};

class CenterOutsidePatchError : public Error {
public:
    explicit CenterOutsidePatchError(const std::string& msg) : Error(ErrorKind::Config, msg) {}
};

}  // namespace fadsar
