#pragma once

#include <stdexcept>
#include <string>

namespace kpos {

/// Bad user input: malformed indices, out-of-range orders, unparsable data.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Mutation requested at a frozen or dead vertex.
struct MutationError : std::runtime_error {
    explicit MutationError(const std::string& what) : std::runtime_error(what) {}
};

/// An exchange division left a nonzero remainder. This never happens for a
/// well-formed seed; it signals a corrupted seed or an implementation bug,
/// so it derives from logic_error and callers should treat it as fatal.
struct DivisibilityError : std::logic_error {
    explicit DivisibilityError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace kpos
