#include "permgen/sampling.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>

#include <fmt/format.h>

#include "permgen/rng.hpp"

namespace permgen {
namespace {

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw Error(ErrorCode::ParseError, "bad number '" + value + "' for " + key);
  }
  return out;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw Error(ErrorCode::ParseError, "bad integer '" + value + "' for " + key);
  return out;
}

void unit_direction(Rng& rng, std::vector<double>& u) {
  double len = 0.0;
  do {
    len = 0.0;
    for (double& x : u) {
      x = rng.normal();
      len += x * x;
    }
  } while (len == 0.0);
  len = std::sqrt(len);
  for (double& x : u) x /= len;
}

std::vector<double> draw(const DistributionSpec& dist, Rng& rng) {
  std::vector<double> x(dist.dim);
  switch (dist.kind) {
    case DistributionSpec::Kind::GaussianStd:
      for (double& v : x) v = rng.normal();
      break;
    case DistributionSpec::Kind::EllipticalLight: {
      if (dist.radial == DistributionSpec::Radial::Normal) {
        for (double& v : x) v = rng.normal();
      } else {
        unit_direction(rng, x);
        const double r = rng.exponential();
        for (double& v : x) v *= r;
      }
      x[0] *= dist.aspect;
      break;
    }
    case DistributionSpec::Kind::ParetoRadial: {
      unit_direction(rng, x);
      const double r = std::pow(rng.uniform_open_low(), -1.0 / dist.alpha);
      for (double& v : x) v *= r;
      break;
    }
    case DistributionSpec::Kind::Pareto1D:
      x[0] = std::pow(rng.uniform_open_low(), -1.0 / dist.alpha);
      break;
    case DistributionSpec::Kind::UniformBox:
      for (double& v : x) v = rng.uniform(dist.lo, dist.hi);
      break;
  }
  return x;
}

}  // namespace

DistributionSpec DistributionSpec::gaussian(std::size_t d, std::uint64_t seed) {
  DistributionSpec s;
  s.kind = Kind::GaussianStd;
  s.dim = d;
  s.seed = seed;
  return s;
}

DistributionSpec DistributionSpec::elliptical(std::size_t d, Radial radial, std::uint64_t seed) {
  DistributionSpec s;
  s.kind = Kind::EllipticalLight;
  s.dim = d;
  s.radial = radial;
  s.seed = seed;
  return s;
}

DistributionSpec DistributionSpec::pareto_radial(std::size_t d, double alpha, std::uint64_t seed) {
  DistributionSpec s;
  s.kind = Kind::ParetoRadial;
  s.dim = d;
  s.alpha = alpha;
  s.seed = seed;
  return s;
}

DistributionSpec DistributionSpec::pareto_1d(double alpha, std::uint64_t seed) {
  DistributionSpec s;
  s.kind = Kind::Pareto1D;
  s.dim = 1;
  s.alpha = alpha;
  s.seed = seed;
  return s;
}

DistributionSpec DistributionSpec::uniform_box(std::size_t d, double lo, double hi, std::uint64_t seed) {
  DistributionSpec s;
  s.kind = Kind::UniformBox;
  s.dim = d;
  s.lo = lo;
  s.hi = hi;
  s.seed = seed;
  return s;
}

void DistributionSpec::validate() const {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "uniform bounds need lo < hi");
  if (!(aspect > 0.0)) throw Error(ErrorCode::InvalidArgument, "aspect must be positive");
  if (kind == Kind::Pareto1D && dim != 1) throw Error(ErrorCode::InvalidArgument, "Pareto1D is one-dimensional");
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string kind(text.substr(0, colon));
  std::map<std::string, std::string> kv;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw Error(ErrorCode::ParseError, "expected key=value in '" + std::string(item) + "'");
      }
      const std::string key(item.substr(0, eq));
      if (!kv.emplace(key, std::string(item.substr(eq + 1))).second) {
        throw Error(ErrorCode::ParseError, "repeated key '" + key + "'");
      }
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }

  DistributionSpec s;
  const auto take = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  if (auto v = take("d")) s.dim = parse_uint("d", *v);
  if (auto v = take("seed")) s.seed = parse_uint("seed", *v);

  if (kind == "gauss" || kind == "gaussian") {
    s.kind = Kind::GaussianStd;
  } else if (kind == "elliptical") {
    s.kind = Kind::EllipticalLight;
    if (auto v = take("radial")) {
      if (*v == "normal") {
        s.radial = Radial::Normal;
      } else if (*v == "exponential") {
        s.radial = Radial::Exponential;
      } else {
        throw Error(ErrorCode::ParseError, "radial must be normal or exponential");
      }
    }
    if (auto v = take("aspect")) s.aspect = parse_double("aspect", *v);
  } else if (kind == "pareto" || kind == "pareto-radial") {
    s.kind = (kind == "pareto" && s.dim == 1) ? Kind::Pareto1D : Kind::ParetoRadial;
    if (auto v = take("alpha")) s.alpha = parse_double("alpha", *v);
  } else if (kind == "uniform") {
    s.kind = Kind::UniformBox;
    if (auto v = take("lo")) s.lo = parse_double("lo", *v);
    if (auto v = take("hi")) s.hi = parse_double("hi", *v);
  } else {
    throw Error(ErrorCode::ParseError, "unknown distribution '" + kind + "'");
  }
  if (!kv.empty()) throw Error(ErrorCode::ParseError, "unknown key '" + kv.begin()->first + "' for " + kind);
  s.validate();
  return s;
}

std::string DistributionSpec::to_string() const {
  switch (kind) {
    case Kind::GaussianStd: return fmt::format("gauss:d={},seed={}", dim, seed);
    case Kind::EllipticalLight:
      return fmt::format("elliptical:d={},radial={},aspect={},seed={}", dim,
                         radial == Radial::Normal ? "normal" : "exponential", aspect, seed);
    case Kind::ParetoRadial: return fmt::format("pareto-radial:d={},alpha={},seed={}", dim, alpha, seed);
    case Kind::Pareto1D: return fmt::format("pareto:d=1,alpha={},seed={}", alpha, seed);
    case Kind::UniformBox: return fmt::format("uniform:d={},lo={},hi={},seed={}", dim, lo, hi, seed);
  }
  return "unknown";
}

std::vector<Creation> sample_draws(const DistributionSpec& dist, std::size_t n) {
  dist.validate();
  Rng rng(dist.seed);
  std::vector<Creation> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(draw(dist, rng));
  return out;
}

Corpus sample_corpus(const DistributionSpec& dist, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "corpus size must be >= 1");
  dist.validate();
  Rng rng(dist.seed);
  Corpus corpus(dist.dim);
  std::size_t repeats = 0;
  while (corpus.size() < n) {
    Creation c(draw(dist, rng));
    if (corpus.contains(c)) {
      if (++repeats > 1000 + n) throw Error(ErrorCode::DegenerateSystem, "sampler keeps repeating draws");
      continue;
    }
    corpus.add(std::move(c));
  }
  return corpus;
}

TailDiagnostic tail_diagnostic(const DistributionSpec& dist, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "tail diagnostic needs n >= 2");
  TailDiagnostic t;
  double running = 0.0;
  for (const auto& x : sample_draws(dist, n)) {
    const double norm = std::sqrt(dot(x.coords(), x.coords()));
    const double next = std::max(running, norm);
    if (!t.max_norm.empty()) t.successive_ratio.push_back(next > 0.0 ? running / next : 1.0);
    running = next;
    t.max_norm.push_back(running);
  }
  return t;
}

}  // namespace permgen
