#pragma once

#include <stdexcept>
#include <string>

namespace rplink {

// Domain errors carry a stable machine-readable code (mirrored in CLI JSON
// error output) plus a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

#define RPLINK_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& message = "") : Error(#Name, message) {} \
  }

RPLINK_DEFINE_ERROR(FormatError);
RPLINK_DEFINE_ERROR(NotPositive);
RPLINK_DEFINE_ERROR(NotAPermutationOfGenerators);
RPLINK_DEFINE_ERROR(ParityViolation);
RPLINK_DEFINE_ERROR(RangeViolation);
RPLINK_DEFINE_ERROR(InvalidComposition);
RPLINK_DEFINE_ERROR(ModelMismatch);
RPLINK_DEFINE_ERROR(HypothesisFailed);
RPLINK_DEFINE_ERROR(CertificateFailed);
RPLINK_DEFINE_ERROR(LinesIntersect);
RPLINK_DEFINE_ERROR(NotHopf);
RPLINK_DEFINE_ERROR(DegenerateChart);
RPLINK_DEFINE_ERROR(CollisionFound);
RPLINK_DEFINE_ERROR(DegeneratePlane);

#undef RPLINK_DEFINE_ERROR

}  // namespace rplink
