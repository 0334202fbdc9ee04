#pragma once

#include <stdexcept>
#include <string>

namespace permtree {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidPermutation : public Error {
public:
    using Error::Error;
};

/// Input permutation does not induce a tree.
class NotATree : public Error {
public:
    explicit NotATree(const std::string& what = "permutation graph is not a tree")
        : Error(what) {}
};

class TooSmall : public Error {
public:
    using Error::Error;
};

/// Exhaustive job refused because it exceeds a configured cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class EmptyHistogram : public Error {
public:
    using Error::Error;
};

class TooFewSamples : public Error {
public:
    using Error::Error;
};

class DegenerateVariance : public Error {
public:
    using Error::Error;
};

}  // namespace permtree
