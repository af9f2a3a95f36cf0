#pragma once

#include <stdexcept>
#include <string>

namespace popns {

/// Argument outside the documented domain of an operation.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operation invoked on a state that does not satisfy its precondition.
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Two distinct names hashed to the same key. Fatal for a run.
class CollisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad command line or configuration file.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reading or writing an output or configuration file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace popns
