#pragma once

#include <stdexcept>
#include <string>

namespace loewy {

// Input outside an operation's domain (bad level, singular weight, unsupported type...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace loewy
