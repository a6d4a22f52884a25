#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ginscale {

using Count = std::uint64_t;

/// One researcher: an opaque id and one citation count per publication.
struct CitationRecord {
    std::string id;
    std::vector<Count> citations;

    std::size_t n_pub() const noexcept { return citations.size(); }
    /// Throws DataError on overflow.
    Count n_cit() const;
    /// <x> = N_cit / N_pub; throws DataError for an empty record.
    double mean() const;

    friend bool operator==(const CitationRecord&, const CitationRecord&) = default;
};

/// Distinct citation values in ascending order with their multiplicities.
struct ValueCounts {
    std::vector<Count> values;
    std::vector<Count> counts;
};

ValueCounts distinct_counts(const CitationRecord& record);

}  // namespace ginscale
