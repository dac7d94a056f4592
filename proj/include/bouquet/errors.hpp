#pragma once

#include <stdexcept>
#include <string>

namespace bouquet {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid argument (negative height, empty pattern, |a| above the cap, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// F(t) requested for t above the overflow guard.
class OverflowGuard : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class IncomparableTails : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class UnsupportedTail : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Raised by the witness pipeline when a generated witness fails one of its
// certified checks.
class WitnessCheckFailed : public Error {
public:
    using Error::Error;
};

}  // namespace bouquet
