#ifndef SOMKM_ERROR_HPP
#define SOMKM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace somkm {

enum class Errc {
    // ingest
    MalformedRow,
    BadTimestamp,
    NegativeConsumption,
    NonFiniteValue,
    NoRequestedMonths,
    InvalidArchetypeCount,
    // shared shape/precondition failures
    EmptyMatrix,
    EmptyData,
    DimensionMismatch,
    InvalidConfig,
    // som
    AllNodesEmpty,
    // pca
    TooFewRows,
    BadComponentCount,
    // kmeans
    TooFewPoints,
    LabelOutOfRange,
    // evaluate
    InsufficientClusters,
    DegenerateClustering,
    BadRange,
    LengthMismatch,
    // pipeline
    NoUsableSeries,
    TooFewCenters,
    IoFailure,
    VersionMismatch,
    CorruptFile,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library. what() reads "<ErrorName>: <message>".
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);

    Errc code() const noexcept { return code_; }
    std::string_view name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

}  // namespace somkm

#endif
