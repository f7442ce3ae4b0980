#pragma once

#include <stdexcept>
#include <string>

namespace fieldspan {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A query with no terms left after analysis.
class EmptyQueryError : public Error {
  public:
    EmptyQueryError() : Error("empty query") {}
};

/// Corpus or schema violations found while building an index.
class CorpusError : public Error {
  public:
    using Error::Error;
};

/// Unreadable, truncated, or corrupted index file.
class FormatError : public Error {
  public:
    using Error::Error;
};

/// Invalid scorer parameters or configuration file.
class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace fieldspan
