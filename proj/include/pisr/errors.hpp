#pragma once

#include <stdexcept>
#include <string>

namespace pisr {

// A plan that is not a partition of the instance's tasks, or that uses
// more vehicles than available.
class PlanError : public std::runtime_error {
 public:
  enum class Kind { DuplicateTask, MissingTask, UnknownTask, TooManyCycles, EmptyCycle };

  PlanError(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Exhaustive-search cap exceeded (tsp_exact, brute_force_solve).
class TooLargeError : public std::runtime_error {
 public:
  explicit TooLargeError(std::string message) : std::runtime_error(std::move(message)) {}
};

// Invalid instance-generation policy.
class BadPolicyError : public std::runtime_error {
 public:
  explicit BadPolicyError(std::string message) : std::runtime_error(std::move(message)) {}
};

// Plan/model built from a different instance than the one supplied.
class HashMismatchError : public std::runtime_error {
 public:
  explicit HashMismatchError(std::string message) : std::runtime_error(std::move(message)) {}
};

// Edge-variable assignment cannot be decoded into a route plan.
class DecodeError : public std::runtime_error {
 public:
  enum class Kind { NonIntegral, SubtourDetected, BadDegree };

  DecodeError(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Model text serialization problems.
class FormatError : public std::runtime_error {
 public:
  enum class Kind { SyntaxError, UnsupportedFeature, NameTooLong };

  FormatError(Kind kind, std::string message, int line = 0, int column = 0)
      : std::runtime_error(std::move(message)), kind_(kind), line_(line), column_(column) {}
  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

// File / schema problems for instance and plan JSON files.
class IoError : public std::runtime_error {
 public:
  explicit IoError(std::string message) : std::runtime_error(std::move(message)) {}
};

}  // namespace pisr
