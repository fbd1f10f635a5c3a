#pragma once

#include <stdexcept>
#include <string>

namespace mixdae {

enum class ErrorKind {
    InvalidInput,
    ParseError,
    NoPerfectMatching,
    NegativeCycle,
    PerfectMatchingExists,
    InfeasibleDual,
    AlreadyTight,
    NotDimensionallyConsistent,
    IterationOverrun,
    ChainExtensionFailed,
    SingularTightMatrix,
    SingularMatrix,
    TooLarge,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind k, const std::string &msg) : std::runtime_error(msg), kind(k) {}
    ErrorKind kind;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string &msg) { throw Error(k, msg); }

inline void require(bool cond, ErrorKind k, const std::string &msg) {
    if (!cond) fail(k, msg);
}

} // namespace mixdae
