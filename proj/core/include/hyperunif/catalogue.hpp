#ifndef HYPERUNIF_CATALOGUE_HPP_
#define HYPERUNIF_CATALOGUE_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperunif/error.hpp"
#include "hyperunif/sphere.hpp"

namespace hyperunif {

enum class CoordinateFormat { lonlat_deg, latlon_deg, cartesian };
enum class LongitudeConvention { east_0_360, signed_180 };

/// Throws DomainError for unknown names.
CoordinateFormat parse_coordinate_format(std::string_view s);
std::string_view to_string(CoordinateFormat f);
std::string_view to_string(LongitudeConvention c);

struct CraterRecord {
  std::string name;
  double lat_deg = 0.0;
  double lon_deg = 0.0;  // normalized to [0, 360)
  std::optional<double> diameter_km;
};

struct CraterCatalogue {
  std::vector<CraterRecord> records;
  /// Convention found in the file before normalization.
  LongitudeConvention source_convention = LongitudeConvention::east_0_360;
};

/// Column names looked up (case-insensitively) in the header. Empty lat/lon
/// names fall back to the built-in aliases and then to position: the first
/// two columns, in the order the format names them.
struct ColumnMapping {
  std::string lat;
  std::string lon;
  std::string name;
  std::string diameter;
};

struct ParseOptions {
  CoordinateFormat format = CoordinateFormat::lonlat_deg;
  ColumnMapping columns;
  /// Drop invalid rows (reported in ParsedData::skipped) instead of failing.
  bool skip_bad = false;
  char delimiter = ',';
};

struct ParsedData {
  DirectionalSample sample;
  std::optional<CraterCatalogue> catalogue;  // lon/lat formats only
  std::vector<ParseError::Issue> skipped;
};

/// Reads a headed CSV. Blank lines and lines starting with '#' are ignored;
/// numbers use the C locale. Every bad row is reported with its line number
/// in one ParseError unless skip_bad is set. Longitudes may use [0, 360) or
/// (-180, 180]; the convention is detected from the data and normalized.
/// Cartesian rows use every column and must satisfy the sphere tolerance.
ParsedData parse_catalogue(std::istream& in, const ParseOptions& opt = {});
ParsedData parse_catalogue(const std::filesystem::path& path, const ParseOptions& opt = {});

/// (cos lat cos lon, cos lat sin lon, sin lat), angles in degrees.
std::vector<double> lonlat_to_vector(double lon_deg, double lat_deg);
/// Inverse of lonlat_to_vector: {lon in [0, 360), lat}.
std::pair<double, double> vector_to_lonlat(std::span<const double> x);

DirectionalSample to_sample(const CraterCatalogue& c);

}  // namespace hyperunif

#endif  // HYPERUNIF_CATALOGUE_HPP_
