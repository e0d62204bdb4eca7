#pragma once

#include <stdexcept>
#include <string>

namespace detk {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by parse_poly on malformed input; carries a 0-based position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

class VariableMismatchError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

// A polynomial has no lift over the given generators (polynomial ring,
// not the local ring; see Ideal docs).
class NotInIdealError : public Error {
public:
    NotInIdealError(const std::string& msg, std::string witness_text)
        : Error(msg), witness(std::move(witness_text)) {}
    std::string witness;
};

class NotPrimitiveError : public Error {
public:
    NotPrimitiveError(const std::string& msg, std::string witness_text)
        : Error(msg), witness(std::move(witness_text)) {}
    std::string witness;
};

// All maximal minors vanish: the Fitting ideal is zero and the method
// yields no information for this input.
class DegenerateIdealError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace detk
