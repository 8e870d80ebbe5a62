#pragma once

#include <stdexcept>
#include <string>

namespace hyperchab {

enum class Errc {
  InvalidInput,
  DivisionByIndistinguishableZero,
  NotASquare,
  OddPrimeRequired,
  ZeroArgument,
  AllCoefficientsIndistinguishableFromZero,
  ProvisionalPolygon,
  UnsupportedRegime,
  OutsideDomain,
  MissingAbelianConstant,
  WindowViolation,
  NonSplitInput,
  PrecisionInsufficient,
  GammaNotSquare,
  MissingAlpha,
  MissingGamma,
  DegreeTooLarge,
  RelationViolated,
  Disconnected,
  NonIntegralGenus,
  UnclassifiableVertex,
  BoundViolated,
  NothingToRewrite,
  RankTooLarge,
  RankOutOfRange,
  CertificationFailed,
  CoverageGap,
  DoubleCover,
};

const char* to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// CLI can report it as structured JSON.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace hyperchab
