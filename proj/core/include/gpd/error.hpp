#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace gpd {

enum class ErrorCode {
  NotComposable,
  UnknownObject,
  UnknownArrow,
  NotNormal,
  EmptyIntersection,
  NotInDomain,
  EmptyDomain,
  DepthExceeded,
  SourceMismatch,
  NoSectionThroughW,
  OutOfOverlap,
  RelationViolation,
  NotGenerating,
  NotPregroupoidMorphism,
  BaseMismatch,
  InvalidModel,
  Parse,
};

std::string_view to_string(ErrorCode code);

// Every failure carries a machine-readable code and, where one exists, a
// witness that can be fed back to the operation that produced it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, nlohmann::json witness = nullptr)
      : std::runtime_error(what), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  nlohmann::json witness_;
};

}  // namespace gpd
