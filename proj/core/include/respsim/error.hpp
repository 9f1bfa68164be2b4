#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace respsim {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a documented precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A waveform file could not be turned into a signal.
class IngestionError : public Error {
 public:
  IngestionError(std::size_t record, const std::string& what)
      : Error("record " + std::to_string(record) + ": " + what), record_(record) {}

  /// 1-based index of the offending data record (0 when the file is empty).
  std::size_t record() const noexcept { return record_; }

 private:
  std::size_t record_;
};

/// Constant or zero-energy input where a varying signal is required.
class DegenerateSignalError : public Error {
 public:
  using Error::Error;
};

/// No usable respiration peak in the searched frequency range.
class DetectionError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable data on disk.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace respsim
