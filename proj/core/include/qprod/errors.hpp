#ifndef QPROD_ERRORS_HPP
#define QPROD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qprod {

// Inputs outside an operation's domain (|x| >= 1, division by zero, ...).
class domain_error : public std::invalid_argument {
 public:
  explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed numeric text; the message names the offending token.
class parse_error : public std::invalid_argument {
 public:
  explicit parse_error(const std::string& what) : std::invalid_argument(what) {}
};

// x == 0: the product degenerates to 1 and callers short-circuit.
class degenerate_input : public std::invalid_argument {
 public:
  explicit degenerate_input(const std::string& what) : std::invalid_argument(what) {}
};

// An iterative scheme hit a vanishing denominator or failed to make progress.
class iteration_error : public std::runtime_error {
 public:
  explicit iteration_error(const std::string& what) : std::runtime_error(what) {}
};

// A certified computation could not meet its own guarantee; always a bug or a
// precision-cap violation, never silently ignored.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qprod

#endif
