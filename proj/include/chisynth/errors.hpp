#pragma once

#include <stdexcept>
#include <string>

namespace chisynth {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class NegativeValuation : public Error {
public:
    explicit NegativeValuation(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

class NotSymmetric : public Error {
public:
    NotSymmetric() : Error("matrix is not symmetric") {}
};

class Singular : public Error {
public:
    Singular() : Error("matrix is singular") {}
};

class BadShape : public Error {
public:
    explicit BadShape(const std::string& what) : Error(what) {}
};

class NotInA : public Error {
public:
    NotInA() : Error("matrix lattice is not self-dual (not in the set A)") {}
};

class NotUnitary : public Error {
public:
    NotUnitary() : Error("matrix is not unitary") {}
};

class NotInRing : public Error {
public:
    explicit NotInRing(const std::string& what) : Error(what) {}
};

class NotSelfDual : public Error {
public:
    explicit NotSelfDual(const std::string& what) : Error(what) {}
};

class NotAlternating : public Error {
public:
    explicit NotAlternating(const std::string& what) : Error(what) {}
};

class NotPiEquivalentToDual : public Error {
public:
    NotPiEquivalentToDual() : Error("lattice is not pi-equivalent to its dual") {}
};

class OddExponent : public Error {
public:
    OddExponent() : Error("dual scaling exponent is odd") {}
};

class CoverageIncomplete : public Error {
public:
    explicit CoverageIncomplete(const std::string& what) : Error(what) {}
};

class BoundExceeded : public Error {
public:
    explicit BoundExceeded(const std::string& what) : Error(what) {}
};

class DescentStuck : public Error {
public:
    explicit DescentStuck(const std::string& what) : Error(what) {}
};

}  // namespace chisynth
