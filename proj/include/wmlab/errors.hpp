#pragma once

#include <stdexcept>
#include <string>

namespace wmlab {

// Bad input: malformed files, dimension mismatches, violated preconditions.
// The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A state the algorithms prove unreachable was reached. The CLI maps this to
// exit code 3.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace wmlab
