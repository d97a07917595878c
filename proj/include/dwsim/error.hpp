#pragma once

#include <stdexcept>
#include <string>

namespace dwsim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Input is well formed but a statistic is undefined on it
/// (zero variance, zero reference level, ...).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Scenario configuration problem; carries the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class IoError : public Error {
public:
    IoError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace dwsim
