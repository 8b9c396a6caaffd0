#pragma once

#include <stdexcept>
#include <string>

namespace kglp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems with input data, datasets, or persisted artifacts.
/// The CLI maps these to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

class MissingFileError : public DataError {
 public:
  explicit MissingFileError(const std::string& path)
      : DataError("missing file: " + path) {}
};

class MalformedLineError : public DataError {
 public:
  MalformedLineError(const std::string& path, std::size_t line_number,
                     const std::string& what)
      : DataError(path + ":" + std::to_string(line_number) + ": " + what),
        line_number_(line_number) {}

  std::size_t line_number() const { return line_number_; }

 private:
  std::size_t line_number_;
};

class DanglingReferenceError : public DataError {
 public:
  DanglingReferenceError(const std::string& context, const std::string& id)
      : DataError(context + ": reference to unknown id '" + id + "'") {}
};

class DuplicateIdError : public DataError {
 public:
  DuplicateIdError(const std::string& context, const std::string& id)
      : DataError(context + ": duplicate id '" + id + "'") {}
};

class ValidationError : public DataError {
 public:
  using DataError::DataError;
};

class UnknownEntityError : public DataError {
 public:
  explicit UnknownEntityError(std::uint32_t id)
      : DataError("unknown entity id " + std::to_string(id)) {}
};

class UnknownIdError : public DataError {
 public:
  using DataError::DataError;
};

class EmptyTrainSetError : public DataError {
 public:
  EmptyTrainSetError() : DataError("train split is empty") {}
};

class EmptyTestSetError : public DataError {
 public:
  EmptyTestSetError() : DataError("test split is empty") {}
};

class MissingArtifactError : public DataError {
 public:
  explicit MissingArtifactError(const std::string& path)
      : DataError("missing artifact: " + path) {}
};

class ArtifactVersionError : public DataError {
 public:
  using DataError::DataError;
};

/// Contract violations inside the library. The CLI maps these (and any
/// other unexpected exception) to exit code 3.
class InvalidPrefixError : public Error {
 public:
  using Error::Error;
};

class EmptyTrieError : public Error {
 public:
  EmptyTrieError() : Error("trie has no entities") {}
};

class DuplicateTargetError : public Error {
 public:
  using Error::Error;
};

}  // namespace kglp
