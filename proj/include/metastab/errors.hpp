#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace metastab {

/// Recoverable: an exact computation would grow past the active digit budget
/// (or an evaluation-count budget). Carries a sound upper bound on log2 of
/// the value that was being built, when one is known.
class budget_error : public std::runtime_error {
 public:
  budget_error(const std::string& what, double log2_estimate)
      : std::runtime_error(what), log2_estimate_(log2_estimate) {}
  double log2_estimate() const noexcept { return log2_estimate_; }

 private:
  double log2_estimate_;
};

/// A caller violated a documented precondition.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A proved inequality failed on concrete data. Always an implementation bug.
class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A family recipe produced a non-contractive or non-commuting family.
class construction_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A modulus of uniform convexity evaluated outside (0, 1].
class modulus_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in a textual expression; offset is a byte position.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Invalid experiment configuration (CLI usage error, exit code 2).
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failure; message includes the path.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace metastab
