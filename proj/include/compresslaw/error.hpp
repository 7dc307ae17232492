// Copyright 2026 The compresslaw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace compresslaw {

enum class ErrorCode {
  InvalidArgument,
  Domain,
  SingularDesign,
  Regime,
  Parse,
  Io,
};

/// Base of every exception thrown by the library. The code is what the C API
/// surfaces as its status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(ErrorCode::Domain, msg) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& msg)
      : Error(ErrorCode::InvalidArgument, msg) {}
};

class SingularDesignError : public Error {
 public:
  explicit SingularDesignError(const std::string& msg)
      : Error(ErrorCode::SingularDesign, msg) {}
};

class RegimeError : public Error {
 public:
  explicit RegimeError(const std::string& msg) : Error(ErrorCode::Regime, msg) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(ErrorCode::Parse, msg) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(ErrorCode::Io, msg) {}
};

const char* to_string(ErrorCode code) noexcept;

}  // namespace compresslaw
