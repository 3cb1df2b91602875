#pragma once

#include <stdexcept>
#include <string>

namespace propest {

// Base for every error the library raises. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedFamily : public Error {
public:
    using Error::Error;
};

class InvalidNull : public Error {
public:
    using Error::Error;
};

class NonFiniteIntegrand : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class NonFiniteObservation : public Error {
public:
    using Error::Error;
};

class InvalidM : public Error {
public:
    using Error::Error;
};

class TooFewPValues : public Error {
public:
    using Error::Error;
};

class InvalidLambda : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

}  // namespace propest
