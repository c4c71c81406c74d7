#include "somkm/error.hpp"

namespace somkm {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::MalformedRow: return "MalformedRow";
        case Errc::BadTimestamp: return "BadTimestamp";
        case Errc::NegativeConsumption: return "NegativeConsumption";
        case Errc::NonFiniteValue: return "NonFiniteValue";
        case Errc::NoRequestedMonths: return "NoRequestedMonths";
        case Errc::InvalidArchetypeCount: return "InvalidArchetypeCount";
        case Errc::EmptyMatrix: return "EmptyMatrix";
        case Errc::EmptyData: return "EmptyData";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::InvalidConfig: return "InvalidConfig";
        case Errc::AllNodesEmpty: return "AllNodesEmpty";
        case Errc::TooFewRows: return "TooFewRows";
        case Errc::BadComponentCount: return "BadComponentCount";
        case Errc::TooFewPoints: return "TooFewPoints";
        case Errc::LabelOutOfRange: return "LabelOutOfRange";
        case Errc::InsufficientClusters: return "InsufficientClusters";
        case Errc::DegenerateClustering: return "DegenerateClustering";
        case Errc::BadRange: return "BadRange";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::NoUsableSeries: return "NoUsableSeries";
        case Errc::TooFewCenters: return "TooFewCenters";
        case Errc::IoFailure: return "IoFailure";
        case Errc::VersionMismatch: return "VersionMismatch";
        case Errc::CorruptFile: return "CorruptFile";
    }
    return "UnknownError";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

}  // namespace somkm
