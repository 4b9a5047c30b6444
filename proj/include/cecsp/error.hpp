#ifndef CECSP_ERROR_HPP
#define CECSP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cecsp {

// A file could not be opened, read or written.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A document was readable but malformed (bad JSON, missing fields, broken
// instance invariants).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The LP backend failed to produce a usable answer (iteration limit,
// numerical breakdown).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cecsp

#endif  // CECSP_ERROR_HPP
