// ovtf/errors.hpp
//
// Copyright 2026 The ovtf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef OVTF_ERRORS_HPP
#define OVTF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ovtf {

// Invalid configuration, malformed content or mismatched inputs.
// Mapped to exit code 1 by the CLI.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Missing, unreadable or unwritable files. Mapped to exit code 2 by the CLI.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ovtf

#endif  // OVTF_ERRORS_HPP
