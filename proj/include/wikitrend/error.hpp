#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

namespace wikitrend {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments violate an operation's preconditions (length mismatch, too short, bad option).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Two series have no usable common span.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// An aggregation produced no complete period, or a collection came out empty.
class EmptyResultError : public Error {
 public:
  using Error::Error;
};

/// A keyword or keyword list cannot be used.
class KeywordError : public Error {
 public:
  using Error::Error;
};

/// A serialized file does not follow its format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An invariant the library itself is responsible for was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// A dump file (or dump directory) could not be read.
class IngestError : public Error {
 public:
  IngestError(std::filesystem::path path, const std::string& what)
      : Error(path.string() + ": " + what), path_(std::move(path)) {}

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace wikitrend
