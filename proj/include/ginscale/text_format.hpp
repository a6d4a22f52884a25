#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ginscale {

/// Shortest decimal form that parses back to the same double ("nan"/"inf" for non-finite).
std::string format_real(double value);

/// Strict full-string parse; throws DomainError on junk.
double parse_real(std::string_view text);
unsigned long long parse_unsigned(std::string_view text);

/// RFC 4180 quoting for one CSV field.
std::string csv_escape(std::string_view field);
/// Splits one CSV line, honoring double-quoted fields; throws DomainError on bad quoting.
std::vector<std::string> csv_split(std::string_view line);

}  // namespace ginscale
