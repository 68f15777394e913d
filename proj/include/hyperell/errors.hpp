// Copyright 2026 The hyperell Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperell {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid field modulus, mismatched fields, unsupported degree.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (polynomial strings, target specs, config files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Zero divisor, zero modulus and similar domain violations.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or table would exceed the configured memory budget.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, int degree) : Error(what), degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

/// Two independent computations of the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// The zero finder could not account for all 2g zeros.
class RootIsolationError : public Error {
 public:
  RootIsolationError(const std::string& what, std::vector<std::pair<double, double>> suspects)
      : Error(what), suspects_(std::move(suspects)) {}
  const std::vector<std::pair<double, double>>& suspect_intervals() const noexcept {
    return suspects_;
  }

 private:
  std::vector<std::pair<double, double>> suspects_;
};

/// The linear-programming solver failed (infeasible, unbounded, iteration cap).
class SolverError : public Error {
 public:
  using Error::Error;
};

/// A one-sided polynomial could not be certified even after repair.
class CertificationError : public Error {
 public:
  CertificationError(const std::string& what, double worst_point, double worst_violation)
      : Error(what), worst_point_(worst_point), worst_violation_(worst_violation) {}
  double worst_point() const noexcept { return worst_point_; }
  double worst_violation() const noexcept { return worst_violation_; }

 private:
  double worst_point_;
  double worst_violation_;
};

}  // namespace hyperell
