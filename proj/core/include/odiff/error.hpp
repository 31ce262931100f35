#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace odiff {

/// Raised when a tableau is used where validate() must succeed.
class InvalidTableau : public std::invalid_argument {
public:
    explicit InvalidTableau(std::vector<std::string> violations);

    [[nodiscard]] const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Malformed tableau or constraint documents.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace odiff
