#include "hyperunif/results_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hyperunif/error.hpp"

namespace hyperunif {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kCsvHeader = "test,statistic,p_value,method,replicates,K,seed,q,n,k_dirs";


template <typename T>
ordered_json opt_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_int(const std::string& s) {
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument(s);
  return static_cast<T>(v);
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

OutputFormat parse_output_format(std::string_view s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw DomainError("unknown output format: " + std::string(s));
}

std::string results_to_json(std::span<const TestOutcome> outcomes) {
  ordered_json doc;
  doc["version"] = kResultsSchemaVersion;
  doc["outcomes"] = ordered_json::array();
  for (const auto& o : outcomes) {
    ordered_json j;
    j["test"] = std::string(to_string(o.test));
    j["statistic"] = o.statistic;
    j["p_value"] = o.p_value;
    j["method"] = std::string(to_string(o.method));
    j["replicates"] = opt_json(o.replicates);
    j["K"] = opt_json(o.K);
    j["seed"] = opt_json(o.seed);
    j["q"] = o.q;
    j["n"] = o.n;
    j["directions"] = o.directions;
    doc["outcomes"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::string results_to_csv(std::span<const TestOutcome> outcomes) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& o : outcomes) {
    out += std::string(to_string(o.test)) + ',' + format_real(o.statistic) + ',' + format_real(o.p_value) + ',' +
           std::string(to_string(o.method)) + ',';
    if (o.replicates) out += std::to_string(*o.replicates);
    out += ',';
    if (o.K) out += std::to_string(*o.K);
    out += ',';
    if (o.seed) out += std::to_string(*o.seed);
    out += ',' + std::to_string(o.q) + ',' + std::to_string(o.n) + ',' +
           std::to_string(o.directions.size()) + '\n';
  }
  return out;
}

std::vector<TestOutcome> results_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.at("version").get<int>() != kResultsSchemaVersion) {
      throw ParseError("unsupported results schema version", {});
    }
    std::vector<TestOutcome> out;
    for (const auto& j : doc.at("outcomes")) {
      TestOutcome o;
      o.test = parse_test_name(j.at("test").get<std::string>());
      o.statistic = j.at("statistic").get<double>();
      o.p_value = j.at("p_value").get<double>();
      o.method = parse_pvalue_method(j.at("method").get<std::string>());
      if (!j.at("replicates").is_null()) o.replicates = j["replicates"].get<std::size_t>();
      if (!j.at("K").is_null()) o.K = j["K"].get<int>();
      if (!j.at("seed").is_null()) o.seed = j["seed"].get<std::uint64_t>();
      o.q = j.at("q").get<int>();
      o.n = j.at("n").get<std::size_t>();
      o.directions = j.value("directions", std::vector<std::vector<double>>{});
      out.push_back(std::move(o));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed results document: ") + e.what(), {});
  } catch (const DomainError& e) {
    throw ParseError(std::string("malformed results document: ") + e.what(), {});
  }
}

std::vector<TestOutcome> results_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw ParseError("results CSV header mismatch", {{1, "expected " + std::string(kCsvHeader)}});
  }
  std::vector<TestOutcome> out;
  std::vector<ParseError::Issue> issues;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 10) {
      issues.push_back({number, "expected 10 fields"});
      continue;
    }
    try {
      TestOutcome o;
      o.test = parse_test_name(f[0]);
      o.statistic = std::stod(f[1]);
      o.p_value = std::stod(f[2]);
      o.method = parse_pvalue_method(f[3]);
      if (!f[4].empty()) o.replicates = parse_int<std::size_t>(f[4]);
      if (!f[5].empty()) o.K = parse_int<int>(f[5]);
      if (!f[6].empty()) o.seed = parse_int<std::uint64_t>(f[6]);
      o.q = parse_int<int>(f[7]);
      o.n = parse_int<std::size_t>(f[8]);
      out.push_back(std::move(o));
    } catch (const std::exception& e) {
      issues.push_back({number, e.what()});
    }
  }
  if (!issues.empty()) throw ParseError("malformed results CSV", issues);
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at " + path.string());
  }
}

void write_results(std::span<const TestOutcome> outcomes, const std::filesystem::path& path,
                   OutputFormat format) {
  write_file_atomic(path, format == OutputFormat::json ? results_to_json(outcomes)
                                                       : results_to_csv(outcomes));
}

}  // namespace hyperunif
