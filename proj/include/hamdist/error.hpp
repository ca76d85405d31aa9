#pragma once

#include <stdexcept>
#include <string>

namespace hamdist {

// Base class for every error raised by the library. Callers that only care
// about "did the input make sense" catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance shape is wrong (m > n, empty strings, codes outside the alphabet).
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

// A numeric parameter is outside its documented range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Argument lies outside the declared universe of a hash or sumset.
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidModulus : public Error {
 public:
  using Error::Error;
};

// Exact arithmetic would exceed the 63-bit count width.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

// The (A*B - C) >= 0 / support promise of sparse recovery was broken.
class PromiseViolated : public Error {
 public:
  using Error::Error;
};

// A Las Vegas retry loop gave up; the output would otherwise be wrong.
class RetryExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace hamdist
