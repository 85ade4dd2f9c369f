#include "lbpkit/error.hpp"

namespace lbpkit {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedHeader: return "malformed-header";
    case ErrorKind::UnsupportedMaxValue: return "unsupported-max-value";
    case ErrorKind::TruncatedPayload: return "truncated-payload";
    case ErrorKind::OutOfRangeIntensity: return "out-of-range-intensity";
    case ErrorKind::CoordinateOutOfBounds: return "coordinate-out-of-bounds";
    case ErrorKind::EmptyInput: return "empty-input";
    case ErrorKind::InvalidDimensions: return "invalid-dimensions";
    case ErrorKind::ImageTooSmall: return "image-too-small";
    case ErrorKind::OutOfBoundsRing: return "out-of-bounds-ring";
    case ErrorKind::UnsupportedP: return "unsupported-P";
    case ErrorKind::MappingMismatch: return "mapping-mismatch";
    case ErrorKind::EmptyWindow: return "empty-window";
    case ErrorKind::VolumeTooSmall: return "volume-too-small";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::BadRatios: return "bad-ratios";
    case ErrorKind::EmptyTrainingSet: return "empty-training-set";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::LengthMismatch: return "length-mismatch";
    case ErrorKind::NotNormalized: return "not-normalized";
    case ErrorKind::InsufficientTrainingData: return "insufficient-training-data";
    case ErrorKind::KTooLarge: return "k-too-large";
    case ErrorKind::TooFewSamples: return "too-few-samples";
    case ErrorKind::TooManyComponents: return "too-many-components";
    case ErrorKind::AsymmetricInput: return "asymmetric-input";
    case ErrorKind::NonzeroDiagonal: return "nonzero-diagonal";
    case ErrorKind::DegenerateClassDistribution: return "degenerate-class-distribution";
    case ErrorKind::NoPositiveSamples: return "no-positive-samples";
    case ErrorKind::MalformedData: return "malformed-data";
  }
  return "unknown";
}

}  // namespace lbpkit
