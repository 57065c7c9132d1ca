#include "torus/error.hpp"

namespace torus {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonMonicModulus: return "NonMonicModulus";
    case Errc::NotMonic: return "NotMonic";
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::EndpointIsRoot: return "EndpointIsRoot";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::Reducible: return "Reducible";
    case Errc::NotTotallyReal: return "NotTotallyReal";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::NotTotallyRealSplit: return "NotTotallyRealSplit";
    case Errc::NotHyperbolic: return "NotHyperbolic";
    case Errc::NotCommuting: return "NotCommuting";
    case Errc::DetNotOne: return "DetNotOne";
    case Errc::DimTooSmall: return "DimTooSmall";
    case Errc::DimTooLarge: return "DimTooLarge";
    case Errc::OddWeight: return "OddWeight";
    case Errc::BadPlane: return "BadPlane";
    case Errc::LoopNotClosed: return "LoopNotClosed";
    case Errc::IndeterminateLift: return "IndeterminateLift";
    case Errc::NotRank3Confined: return "NotRank3Confined";
    case Errc::NoFieldAvailable: return "NoFieldAvailable";
    case Errc::Inconclusive: return "Inconclusive";
    case Errc::MixedDimensions: return "MixedDimensions";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

void internal_error(const std::string& what) { throw Error(Errc::Internal, what); }

}  // namespace torus
