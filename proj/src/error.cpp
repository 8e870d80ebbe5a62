#include "hyperchab/error.hpp"

namespace hyperchab {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::DivisionByIndistinguishableZero: return "DivisionByIndistinguishableZero";
    case Errc::NotASquare: return "NotASquare";
    case Errc::OddPrimeRequired: return "OddPrimeRequired";
    case Errc::ZeroArgument: return "ZeroArgument";
    case Errc::AllCoefficientsIndistinguishableFromZero:
      return "AllCoefficientsIndistinguishableFromZero";
    case Errc::ProvisionalPolygon: return "ProvisionalPolygon";
    case Errc::UnsupportedRegime: return "UnsupportedRegime";
    case Errc::OutsideDomain: return "OutsideDomain";
    case Errc::MissingAbelianConstant: return "MissingAbelianConstant";
    case Errc::WindowViolation: return "WindowViolation";
    case Errc::NonSplitInput: return "NonSplitInput";
    case Errc::PrecisionInsufficient: return "PrecisionInsufficient";
    case Errc::GammaNotSquare: return "GammaNotSquare";
    case Errc::MissingAlpha: return "MissingAlpha";
    case Errc::MissingGamma: return "MissingGamma";
    case Errc::DegreeTooLarge: return "DegreeTooLarge";
    case Errc::RelationViolated: return "RelationViolated";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NonIntegralGenus: return "NonIntegralGenus";
    case Errc::UnclassifiableVertex: return "UnclassifiableVertex";
    case Errc::BoundViolated: return "BoundViolated";
    case Errc::NothingToRewrite: return "NothingToRewrite";
    case Errc::RankTooLarge: return "RankTooLarge";
    case Errc::RankOutOfRange: return "RankOutOfRange";
    case Errc::CertificationFailed: return "CertificationFailed";
    case Errc::CoverageGap: return "CoverageGap";
    case Errc::DoubleCover: return "DoubleCover";
  }
  return "Unknown";
}

}  // namespace hyperchab
