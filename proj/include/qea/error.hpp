#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qea {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated precondition on an otherwise valid object.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// expressions

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& message)
        : Error("syntax error at " + std::to_string(position) + ": " + message),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class UnknownVariable : public Error {
public:
    using Error::Error;
};

class UnknownFunction : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

// roadmap

class InvalidRoadmap : public Error {
public:
    using Error::Error;
};

class InvalidEdit : public Error {
public:
    using Error::Error;
};

// model / solver

class InvalidParams : public Error {
public:
    InvalidParams(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class NoConvergence : public Error {
public:
    NoConvergence(const std::string& message, double range_lo, double range_hi)
        : Error(message + " (scanned [" + std::to_string(range_lo) + ", " +
                std::to_string(range_hi) + "])"),
          lo_(range_lo), hi_(range_hi) {}

    double range_lo() const noexcept { return lo_; }
    double range_hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

// presets / config

class PresetCorrupt : public Error {
public:
    using Error::Error;
};

class InvalidOverride : public Error {
public:
    InvalidOverride(std::string key, const std::string& message)
        : Error("override '" + key + "': " + message), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class UndefinedSpread : public Error {
public:
    using Error::Error;
};

}  // namespace qea
