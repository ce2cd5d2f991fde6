#pragma once

#include <stdexcept>
#include <string>

namespace coalg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad scalar literal, division by zero, non-prime modulus.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Non-conformable matrix shapes or blocks.
class DimensionError : public Error {
public:
    using Error::Error;
};

class FieldMismatch : public Error {
public:
    FieldMismatch() : Error("coefficient fields differ") {}
};

/// Maps composed or added across modules that do not coincide.
class ModuleMismatch : public Error {
public:
    using Error::Error;
};

/// A candidate differential with d^2 != 0.
class NotAComplex : public Error {
public:
    NotAComplex(int degree, std::string witness)
        : Error("d^2 != 0 at degree " + std::to_string(degree) + " on basis vector " + witness),
          degree(degree),
          witness(std::move(witness)) {}
    int degree;
    std::string witness;
};

/// A degree-0 map that does not commute with the differentials.
class NotAChainMap : public Error {
public:
    using Error::Error;
};

/// Structure handed to preservation_report fails its own axioms.
class BaseStructureInvalid : public Error {
public:
    using Error::Error;
};

}  // namespace coalg
