// Copyright 2026 The hemisys Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace hemi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unsupported prime, missing square root of 2, bad option values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Mathematical domain violation: inverse of zero, point off the surface.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// A computed object contradicts a structural invariant; signals a bug.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A group-theoretic construction step failed one of its build-time checks.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive check disagreed with a claimed theorem.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace hemi
