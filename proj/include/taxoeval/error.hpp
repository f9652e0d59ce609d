#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace taxoeval {

/// One constraint violation, located by a "/"-joined label path.
struct Diagnostic {
    std::string path;
    std::string message;
};

/// Input did not satisfy a documented constraint.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what)
        : std::runtime_error(what) {}
    ValidationError(const std::string& what, std::vector<Diagnostic> diagnostics)
        : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// A remote encoder could not be reached or answered with a non-success status.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A remote encoder answered, but the payload broke the wire contract.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace taxoeval
