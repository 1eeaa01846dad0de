#pragma once

#include <stdexcept>
#include <string>

namespace eqloc {

enum class ErrorKind {
    Domain,        // point outside chart domain or on a singular locus
    Definition,    // scenario data violates a structural invariant
    Capability,    // differentiation order exhausted
    Precondition,  // operation called outside its contract
    Integration,   // quadrature failed to converge
    Inconsistency, // numeric search disagrees with declared data
    Parse,         // config or expression text malformed
    Argument       // malformed direct argument (e.g. odd Pfaffian size)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

const char* to_string(ErrorKind kind);

}  // namespace eqloc
