#pragma once

#include <stdexcept>
#include <string>

namespace loopspace {

/*
 * Error taxonomy.  Exit codes are part of the CLI contract:
 *   1  hypothesis or validation failure (bad input, unmet precondition)
 *   2  verification failure (two independent computations disagree)
 *   3  unsupported expression or coefficient ring for the requested operation
 *   4  resource cap exceeded (degree or word-count budget)
 */
class error : public std::runtime_error {
 public:
  error(int exit_code, const std::string& what)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

class validation_error : public error {
 public:
  explicit validation_error(const std::string& what) : error(1, what) {}
};

class verification_error : public error {
 public:
  explicit verification_error(const std::string& what) : error(2, what) {}
};

class unsupported_error : public error {
 public:
  explicit unsupported_error(const std::string& what) : error(3, what) {}
};

class resource_error : public error {
 public:
  explicit resource_error(const std::string& what) : error(4, what) {}
};

}  // namespace loopspace
