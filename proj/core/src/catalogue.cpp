#include "hyperunif/catalogue.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

namespace hyperunif {
namespace {

constexpr double kDegree = 3.14159265358979323846 / 180.0;

constexpr std::array<std::string_view, 7> kLatAliases = {
    "lat", "latitude", "lat_deg", "latitude_deg", "center_lat", "clat", "y_lat"};
constexpr std::array<std::string_view, 8> kLonAliases = {
    "lon", "long", "longitude", "lon_deg", "longitude_deg", "center_lon", "clon", "x_lon"};
constexpr std::array<std::string_view, 4> kNameAliases = {"name", "crater", "crater_name", "id"};
constexpr std::array<std::string_view, 4> kDiameterAliases = {"diameter", "diameter_km", "diam",
                                                              "d_km"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

// Splits one CSV line; double quotes protect delimiters and "" escapes a quote.
std::vector<std::string> split(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == delim) {
      out.emplace_back(trim(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  out.emplace_back(trim(field));
  return out;
}

std::optional<double> to_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

template <std::size_t N>
std::optional<std::size_t> find_column(const std::vector<std::string>& header, const std::string& wanted,
                                       const std::array<std::string_view, N>& aliases) {
  auto lookup = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (lower(header[i]) == name) return i;
    }
    return std::nullopt;
  };
  if (!wanted.empty()) return lookup(lower(wanted));
  for (auto a : aliases) {
    if (auto i = lookup(a)) return i;
  }
  return std::nullopt;
}

struct Line {
  std::size_t number;
  std::vector<std::string> fields;
};

}  // namespace

CoordinateFormat parse_coordinate_format(std::string_view s) {
  if (s == "lonlat_deg") return CoordinateFormat::lonlat_deg;
  if (s == "latlon_deg") return CoordinateFormat::latlon_deg;
  if (s == "cartesian") return CoordinateFormat::cartesian;
  throw DomainError("unknown coordinate format: " + std::string(s));
}

std::string_view to_string(CoordinateFormat f) {
  switch (f) {
    case CoordinateFormat::lonlat_deg: return "lonlat_deg";
    case CoordinateFormat::latlon_deg: return "latlon_deg";
    case CoordinateFormat::cartesian: return "cartesian";
  }
  return "unknown";
}

std::string_view to_string(LongitudeConvention c) {
  return c == LongitudeConvention::east_0_360 ? "0_360" : "-180_180";
}

std::vector<double> lonlat_to_vector(double lon_deg, double lat_deg) {
  const double lon = lon_deg * kDegree;
  const double lat = lat_deg * kDegree;
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

std::pair<double, double> vector_to_lonlat(std::span<const double> x) {
  if (x.size() != 3) throw DomainError("vector_to_lonlat: expects a point of the 2-sphere");
  double lon = std::atan2(x[1], x[0]) / kDegree;
  if (lon < 0.0) lon += 360.0;
  if (lon >= 360.0) lon -= 360.0;
  const double lat = std::atan2(x[2], std::hypot(x[0], x[1])) / kDegree;
  return {lon, lat};
}

DirectionalSample to_sample(const CraterCatalogue& c) {
  std::vector<double> rows;
  rows.reserve(c.records.size() * 3);
  for (const auto& r : c.records) {
    const auto v = lonlat_to_vector(r.lon_deg, r.lat_deg);
    rows.insert(rows.end(), v.begin(), v.end());
  }
  return DirectionalSample(2, std::move(rows));
}

ParsedData parse_catalogue(std::istream& in, const ParseOptions& opt) {
  std::vector<std::string> header;
  std::vector<Line> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::string_view t = trim(raw);
    if (t.empty() || t.front() == '#') continue;
    if (header.empty()) {
      header = split(t, opt.delimiter);
    } else {
      lines.push_back({number, split(t, opt.delimiter)});
    }
  }
  if (header.empty()) throw ParseError("input has no header line", {{0, "missing header"}});

  std::vector<ParseError::Issue> issues;

  if (opt.format == CoordinateFormat::cartesian) {
    const std::size_t dim = header.size();
    if (dim < 2) throw ParseError("cartesian input needs at least two columns", {{0, "header"}});
    std::vector<double> rows;
    for (const auto& line : lines) {
      if (line.fields.size() != dim) {
        issues.push_back({line.number, "expected " + std::to_string(dim) + " fields, found " +
                                           std::to_string(line.fields.size())});
        continue;
      }
      std::vector<double> x(dim);
      bool ok = true;
      for (std::size_t c = 0; c < dim && ok; ++c) {
        const auto v = to_real(line.fields[c]);
        if (!v) {
          issues.push_back({line.number, "non-numeric value in column '" + header[c] + "'"});
          ok = false;
        } else {
          x[c] = *v;
        }
      }
      if (!ok) continue;
      try {
        const UnitVector u(std::move(x));
        rows.insert(rows.end(), u.coords().begin(), u.coords().end());
      } catch (const DomainError& e) {
        issues.push_back({line.number, e.what()});
      }
    }
    if (!issues.empty() && !opt.skip_bad) throw ParseError("invalid rows in cartesian input", issues);
    if (rows.empty()) throw ParseError("no valid data rows", issues);
    return {DirectionalSample(static_cast<int>(dim) - 1, std::move(rows)), std::nullopt,
            std::move(issues)};
  }

  auto lat_col = find_column(header, opt.columns.lat, kLatAliases);
  auto lon_col = find_column(header, opt.columns.lon, kLonAliases);
  if (!opt.columns.lat.empty() && !lat_col) {
    throw ParseError("missing latitude column '" + opt.columns.lat + "'", {{0, "header"}});
  }
  if (!opt.columns.lon.empty() && !lon_col) {
    throw ParseError("missing longitude column '" + opt.columns.lon + "'", {{0, "header"}});
  }
  if (!lat_col || !lon_col) {
    if (header.size() < 2) throw ParseError("need longitude and latitude columns", {{0, "header"}});
    const bool lon_first = opt.format == CoordinateFormat::lonlat_deg;
    if (!lon_col) lon_col = lon_first ? 0 : 1;
    if (!lat_col) lat_col = lon_first ? 1 : 0;
  }
  if (*lat_col == *lon_col) {
    throw ParseError("latitude and longitude resolve to the same column", {{0, "header"}});
  }
  const auto name_col = find_column(header, opt.columns.name, kNameAliases);
  const auto diam_col = find_column(header, opt.columns.diameter, kDiameterAliases);
  if (!opt.columns.name.empty() && !name_col) {
    throw ParseError("missing name column '" + opt.columns.name + "'", {{0, "header"}});
  }
  if (!opt.columns.diameter.empty() && !diam_col) {
    throw ParseError("missing diameter column '" + opt.columns.diameter + "'", {{0, "header"}});
  }

  CraterCatalogue cat;
  std::vector<std::size_t> record_lines;
  for (const auto& line : lines) {
    const std::size_t need = std::max(*lat_col, *lon_col) + 1;
    if (line.fields.size() < need) {
      issues.push_back({line.number, "too few fields"});
      continue;
    }
    const auto lat = to_real(line.fields[*lat_col]);
    const auto lon = to_real(line.fields[*lon_col]);
    if (!lat || !lon) {
      issues.push_back({line.number, "non-numeric latitude or longitude"});
      continue;
    }
    if (*lat < -90.0 || *lat > 90.0) {
      issues.push_back({line.number, "latitude out of range [-90, 90]"});
      continue;
    }
    if (*lon < -180.0 || *lon > 360.0) {
      issues.push_back({line.number, "longitude out of range"});
      continue;
    }
    CraterRecord r;
    r.lat_deg = *lat;
    r.lon_deg = *lon;
    if (name_col && *name_col < line.fields.size()) r.name = line.fields[*name_col];
    if (diam_col && *diam_col < line.fields.size() && !trim(line.fields[*diam_col]).empty()) {
      const auto d = to_real(line.fields[*diam_col]);
      if (!d || *d <= 0.0) {
        issues.push_back({line.number, "diameter must be a positive number"});
        continue;
      }
      r.diameter_km = *d;
    }
    cat.records.push_back(std::move(r));
    record_lines.push_back(line.number);
  }

  const bool has_negative =
      std::any_of(cat.records.begin(), cat.records.end(), [](const auto& r) { return r.lon_deg < 0.0; });
  const bool has_east =
      std::any_of(cat.records.begin(), cat.records.end(), [](const auto& r) { return r.lon_deg > 180.0; });
  if (has_negative && has_east) {
    std::vector<ParseError::Issue> mixed;
    for (std::size_t i = 0; i < cat.records.size(); ++i) {
      if (cat.records[i].lon_deg < 0.0) {
        mixed.push_back({record_lines[i], "negative longitude in a file that also uses (180, 360]"});
      }
    }
    throw ParseError("mixed longitude conventions", std::move(mixed));
  }
  cat.source_convention = has_negative ? LongitudeConvention::signed_180 : LongitudeConvention::east_0_360;
  for (auto& r : cat.records) {
    double lon = std::fmod(r.lon_deg, 360.0);
    if (lon < 0.0) lon += 360.0;
    r.lon_deg = lon;
  }

  if (!issues.empty() && !opt.skip_bad) throw ParseError("invalid rows in catalogue", issues);
  if (cat.records.empty()) throw ParseError("no valid data rows", issues);
  DirectionalSample sample = to_sample(cat);
  return {std::move(sample), std::move(cat), std::move(issues)};
}

ParsedData parse_catalogue(const std::filesystem::path& path, const ParseOptions& opt) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), {{0, "file not readable"}});
  return parse_catalogue(in, opt);
}

}  // namespace hyperunif
