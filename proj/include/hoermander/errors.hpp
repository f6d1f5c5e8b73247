#pragma once

#include <stdexcept>
#include <string>

namespace hoermander {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NonPositiveValue : public Error {
 public:
  using Error::Error;
};

class OrderingViolation : public Error {
 public:
  using Error::Error;
};

class UnboundedRatio : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, int iterations)
      : Error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

class ProjectorMismatch : public Error {
 public:
  using Error::Error;
};

class NotFirstOrder : public Error {
 public:
  using Error::Error;
};

class InsufficientSmoothness : public Error {
 public:
  using Error::Error;
};

class InsufficientTimeResolution : public Error {
 public:
  using Error::Error;
};

class CutoffWrapsAround : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace hoermander
