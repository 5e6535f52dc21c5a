#pragma once

#include <stdexcept>
#include <string>

namespace concomp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : Error {
  using Error::Error;
};

// Malformed RDF or resource file input. line is 1-based, 0 if unknown.
struct ParseError : Error {
  ParseError(int line_, const std::string& message)
      : Error("parse error at line " + std::to_string(line_) + ": " + message), line(line_) {}
  int line;
};

struct EmptyGraphError : Error {
  EmptyGraphError() : Error("graph has no edges") {}
};

struct InvalidKError : Error {
  using Error::Error;
};

struct CurveTooShortError : Error {
  CurveTooShortError() : Error("elbow selection needs at least 3 curve points") {}
};

struct TooFewDocumentsError : Error {
  using Error::Error;
};

struct OntologyMismatchError : Error {
  using Error::Error;
};

struct MissingArtifactsError : Error {
  using Error::Error;
};

struct MissingPriorStageError : Error {
  using Error::Error;
};

}  // namespace concomp
