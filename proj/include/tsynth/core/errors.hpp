#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace tsynth {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user input.
class InputError : public Error {
public:
    using Error::Error;
};

// A requested object cannot be built; may carry a witness string (UTF-8).
class ConstructionError : public Error {
public:
    explicit ConstructionError(const std::string& what, std::optional<std::u32string> witness = {})
        : Error(what), witness_(std::move(witness)) {}

    const std::optional<std::u32string>& witness() const noexcept { return witness_; }

private:
    std::optional<std::u32string> witness_;
};

// A solver model that does not fit the declared variable ranges.
class DecodeError : public Error {
public:
    using Error::Error;
};

// Solver process could not be launched or produced unreadable output.
class SolverError : public Error {
public:
    using Error::Error;
};

// A decoded artifact failed independent verification.
class SoundnessError : public Error {
public:
    using Error::Error;
};

}  // namespace tsynth
