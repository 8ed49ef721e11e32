#ifndef HYPERUNIF_RESULTS_IO_HPP_
#define HYPERUNIF_RESULTS_IO_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperunif/uniformity_tests.hpp"

namespace hyperunif {

enum class OutputFormat { json, csv };

/// Throws DomainError for anything but "json" or "csv".
OutputFormat parse_output_format(std::string_view s);

inline constexpr int kResultsSchemaVersion = 1;

/// Shortest decimal text that reads back to exactly x.
std::string format_real(double x);

/// {"version": 1, "outcomes": [...]}; fields in a fixed order, absent
/// optionals as null.
std::string results_to_json(std::span<const TestOutcome> outcomes);
/// Header test,statistic,p_value,method,replicates,K,seed,q,n,k_dirs; reals
/// printed by format_real, absent optionals left empty.
/// Directions are not part of the CSV form.
std::string results_to_csv(std::span<const TestOutcome> outcomes);

/// Inverses of the above. Throw ParseError on malformed input.
std::vector<TestOutcome> results_from_json(const std::string& text);
std::vector<TestOutcome> results_from_csv(const std::string& text);

/// Writes `content` to a sibling temporary file and renames it over `path`.
/// Throws std::runtime_error naming the path on I/O failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

void write_results(std::span<const TestOutcome> outcomes, const std::filesystem::path& path,
                   OutputFormat format);

}  // namespace hyperunif

#endif  // HYPERUNIF_RESULTS_IO_HPP_
