#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lbpkit {

/// Failure categories raised by the library. Each operation documents which
/// kinds it can raise; callers that need to branch on the cause use kind().
enum class ErrorKind {
  // image_core
  MalformedHeader,
  UnsupportedMaxValue,
  TruncatedPayload,
  OutOfRangeIntensity,
  CoordinateOutOfBounds,
  EmptyInput,
  InvalidDimensions,
  // lbp_descriptors
  ImageTooSmall,
  OutOfBoundsRing,
  UnsupportedP,
  MappingMismatch,
  EmptyWindow,
  VolumeTooSmall,
  InvalidArgument,
  // learning
  BadRatios,
  EmptyTrainingSet,
  DimensionMismatch,
  LengthMismatch,
  NotNormalized,
  InsufficientTrainingData,
  KTooLarge,
  TooFewSamples,
  TooManyComponents,
  AsymmetricInput,
  NonzeroDiagonal,
  // evaluation
  DegenerateClassDistribution,
  NoPositiveSamples,
  // data files
  MalformedData,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lbpkit
