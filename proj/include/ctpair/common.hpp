// Shared error types and the always-on check macro.
//
// Derivations in this library verify their own output (interpolated models
// are re-checked against exact identities, solved matrices against their
// defining equations).  Those checks must run in release builds too, so they
// use CTP_CHECK rather than assert.
#pragma once

#include <stdexcept>
#include <string>

namespace ctp {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or mathematically inadmissible input (bad JSON, repeated roots,
// dependent Selmer generators).  CLI exit code 2.
struct InvalidInput : Error {
    explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

// A local point search ran out of budget at some place.  CLI exit code 3.
struct NoLocalPoint : Error {
    explicit NoLocalPoint(const std::string& msg) : Error(msg) {}
};

// An internal derivation or verification failed; indicates a bug or an
// input outside the supported family rather than a user error.
struct DerivationError : Error {
    explicit DerivationError(const std::string& msg) : Error(msg) {}
};

// A quantity expected to be rational (after Galois descent) was not.
struct NotRational : Error {
    explicit NotRational(const std::string& msg) : Error(msg) {}
};

// A bounded search (auxiliary primes, random sampling) hit its cap.
struct SearchExhausted : Error {
    explicit SearchExhausted(const std::string& msg) : Error(msg) {}
};

// No 4-torsion preimage exists over the requested field.  For genuine
// Selmer inputs the field always suffices, so this doubles as evidence
// that a class is not in the Selmer group.
struct HalvingFailed : Error {
    explicit HalvingFailed(const std::string& msg) : Error(msg) {}
};

// p-adic working precision was exhausted before a value could be certified.
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

#define CTP_CHECK(cond, msg)                                                  \
    do {                                                                      \
        if (!(cond)) throw ::ctp::DerivationError(std::string("check failed: ") + (msg)); \
    } while (0)

}  // namespace ctp
