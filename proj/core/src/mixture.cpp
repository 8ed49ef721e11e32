#include "hyperunif/mixture.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperunif/coefficients.hpp"
#include "hyperunif/error.hpp"
#include "hyperunif/summation.hpp"

namespace hyperunif {
namespace {
constexpr int kMixtureSchemaVersion = 1;
}

double ChiSqMixture::mean() const {
  CompensatedSum<long double> s;
  for (std::size_t k = 0; k < weights.size(); ++k) s += static_cast<long double>(weights[k]) * dofs[k];
  return static_cast<double>(s.value());
}

double ChiSqMixture::variance() const {
  CompensatedSum<long double> s;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    s += 2.0L * static_cast<long double>(weights[k]) * weights[k] * dofs[k];
  }
  return static_cast<double>(s.value());
}

double mixture_weight(int k, int q, double b) {
  return q == 1 ? 0.5 * b : (q - 1.0) / (q - 1.0 + 2.0 * k) * b;
}

ChiSqMixture build_mixture(int q, int K, const MixtureOptions& opt) {
  if (q < 1) throw DomainError("build_mixture: q must be >= 1");
  if (K < 1) throw DomainError("build_mixture: K must be >= 1");
  const std::vector<double> b = coefficient_sequence(q, K);
  ChiSqMixture m;
  m.q = q;
  m.requested_K = static_cast<std::size_t>(K);
  m.weights.reserve(b.size());
  m.dofs.reserve(b.size());
  long double running = 0.0L;
  for (int k = 1; k <= K; ++k) {
    const double w = mixture_weight(k, q, b[k - 1]);
    if (!(w > 0.0)) {
      throw NumericalFailure("build_mixture: non-positive weight",
                             "q=" + std::to_string(q) + " k=" + std::to_string(k));
    }
    const double d = dof_real(k, q);
    if (q >= 4 && k > opt.guard_start_k && w * d < opt.guard_relative * running) break;
    running += static_cast<long double>(w) * d;
    m.weights.push_back(w);
    m.dofs.push_back(d);
  }
  return m;
}

std::string mixture_to_json(const ChiSqMixture& m) {
  nlohmann::json j;
  j["version"] = kMixtureSchemaVersion;
  j["q"] = m.q;
  j["K"] = m.K();
  j["requested_K"] = m.requested_K;
  j["weights"] = m.weights;
  j["dofs"] = m.dofs;
  return j.dump();
}

ChiSqMixture mixture_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("version").get<int>() != kMixtureSchemaVersion) {
      throw ParseError("unsupported mixture schema version", {});
    }
    ChiSqMixture m;
    m.q = j.at("q").get<int>();
    m.weights = j.at("weights").get<std::vector<double>>();
    m.dofs = j.at("dofs").get<std::vector<double>>();
    m.requested_K = j.value("requested_K", m.weights.size());
    if (m.weights.size() != m.dofs.size() || m.weights.size() != j.at("K").get<std::size_t>()) {
      throw ParseError("mixture document has inconsistent lengths", {});
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed mixture document: ") + e.what(), {});
  }
}

ChiSqMixture cached_mixture(int q, int K, const std::filesystem::path& cache_dir) {
  if (cache_dir.empty()) return build_mixture(q, K);
  const auto path = cache_dir / ("mixture_q" + std::to_string(q) + "_K" + std::to_string(K) + ".json");
  if (std::ifstream in{path}) {
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      ChiSqMixture m = mixture_from_json(buf.str());
      if (m.q == q && m.requested_K == static_cast<std::size_t>(K)) return m;
    } catch (const ParseError&) {
      // Stale or corrupt cache entries are rebuilt below.
    }
  }
  ChiSqMixture m = build_mixture(q, K);
  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << mixture_to_json(m);
    if (!out) return m;
  }
  std::filesystem::rename(tmp, path, ec);
  return m;
}

}  // namespace hyperunif
