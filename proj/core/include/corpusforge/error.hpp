#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace corpusforge {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Argument outside its documented domain (bad alpha, zero counts, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

// Malformed input data: config files, tables, record files, invalid UTF-8.
class ParseError : public Error {
  public:
    using Error::Error;
};

// Declared-but-absent inputs, reported in one aggregated error.
class MissingFilesError : public Error {
  public:
    explicit MissingFilesError(std::vector<std::filesystem::path> paths);
    const std::vector<std::filesystem::path>& paths() const { return paths_; }

  private:
    std::vector<std::filesystem::path> paths_;
};

// Wraps any failure with the pipeline stage it happened in.
class StageError : public Error {
  public:
    StageError(std::string stage, const std::string& cause);
    const std::string& stage() const { return stage_; }

  private:
    std::string stage_;
};

} // namespace corpusforge
