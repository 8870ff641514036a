#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stsp {

/// Thrown when an exact search would exceed its configured size cap.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when instance generation cannot satisfy the geometric or
/// connectivity rules for a seed.  Callers are expected to retry with
/// seed + 1; the failing seed travels with the exception.
class GenerationFailure : public std::runtime_error {
public:
    GenerationFailure(std::uint64_t seed, const std::string& what)
        : std::runtime_error(what), seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

/// Thrown on unreadable, unwritable, or malformed files.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stsp
