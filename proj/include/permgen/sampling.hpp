#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "permgen/geometry.hpp"

namespace permgen {

/// A seeded i.i.d. creation process.
///
/// Text form is "<kind>:key=value,..." with kinds
///   gauss:d=D                         standard normal in R^D
///   elliptical:d=D,radial=normal|exponential[,aspect=A]
///                                     uniform direction, light radial law,
///                                     first axis stretched by A (default 2)
///   pareto:d=1,alpha=A                Pareto(A) on [1, inf)
///   pareto:d=D,alpha=A (D > 1), pareto-radial:d=D,alpha=A
///                                     uniform direction, Pareto(A) radius
///   uniform:d=D,lo=L,hi=H             uniform on [L, H]^D
/// and an optional seed=S key.
struct DistributionSpec {
  enum class Kind { GaussianStd, EllipticalLight, ParetoRadial, Pareto1D, UniformBox };
  enum class Radial { Normal, Exponential };

  Kind kind = Kind::GaussianStd;
  std::size_t dim = 1;
  Radial radial = Radial::Normal;
  double aspect = 2.0;
  double alpha = 1.0;
  double lo = 0.0;
  double hi = 1.0;
  std::uint64_t seed = 0;

  static DistributionSpec gaussian(std::size_t d, std::uint64_t seed = 0);
  static DistributionSpec elliptical(std::size_t d, Radial radial, std::uint64_t seed = 0);
  static DistributionSpec pareto_radial(std::size_t d, double alpha, std::uint64_t seed = 0);
  static DistributionSpec pareto_1d(double alpha, std::uint64_t seed = 0);
  static DistributionSpec uniform_box(std::size_t d, double lo, double hi, std::uint64_t seed = 0);

  /// Throws ParseError on malformed text and InvalidArgument on bad parameters.
  static DistributionSpec parse(std::string_view text);
  std::string to_string() const;

  /// Throws InvalidArgument unless d >= 1, alpha > 0, lo < hi, aspect > 0.
  void validate() const;

  DistributionSpec with_seed(std::uint64_t s) const {
    DistributionSpec out = *this;
    out.seed = s;
    return out;
  }
};

/// The first n raw draws; draw i does not depend on n.
std::vector<Creation> sample_draws(const DistributionSpec& dist, std::size_t n);

/// n distinct draws, skipping exact repeats. Prefix-stable in n. Throws
/// DegenerateSystem if the process keeps repeating itself.
Corpus sample_corpus(const DistributionSpec& dist, std::size_t n);

struct TailDiagnostic {
  /// max_{i<=k} |X_i| for k = 1..n.
  std::vector<double> max_norm;
  /// max_{i<=k-1} |X_i| / max_{i<=k} |X_i| for k = 2..n.
  std::vector<double> successive_ratio;
};

/// Requires n >= 2.
TailDiagnostic tail_diagnostic(const DistributionSpec& dist, std::size_t n);

}  // namespace permgen
