#pragma once

#include <stdexcept>
#include <string>

namespace spreadlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParams : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct SamplingFailure : Error {
  using Error::Error;
};
struct FileFormat : Error {
  using Error::Error;
};
struct NotFound : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};
struct PeelStuck : Error {
  using Error::Error;
};
struct ZeroVector : Error {
  using Error::Error;
};
struct InvalidBall : Error {
  using Error::Error;
};
struct RankDeficient : Error {
  using Error::Error;
};
struct NoConvergence : Error {
  using Error::Error;
};
struct AttackFailed : Error {
  using Error::Error;
};
struct InvalidDelta : Error {
  using Error::Error;
};
struct PreconditionFailed : Error {
  using Error::Error;
};
struct HypothesisViolated : Error {
  using Error::Error;
};

}  // namespace spreadlab
