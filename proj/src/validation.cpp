#include "spectra/validation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/parallel.hpp"
#include "spectra/sandwich.hpp"

namespace spectra {

namespace {

constexpr std::array<Shape, 3> kShapes{Shape::Tall, Shape::Square, Shape::Wide};

Index uniform_in(SplitMix64& rng, Index lo, Index hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<Index>(uniform_below(rng, span));
}

struct InstanceResult {
  long long checks = 0;
  long long violations = 0;
  double worst_excess = 0.0;
};

InstanceResult run_ostrowski(Shape shape, int max_dim, Seed seed, bool corrupt) {
  SplitMix64 rng(seed);
  Index n = 0, d = 0;
  InstanceResult out;
  if (!random_dims(shape, max_dim, rng, n, d)) return out;
  const SymMatrix sigma = random_psd(d, rng);
  const DataMatrix z = random_data(n, d, rng);
  auto results = ostrowski_sandwich_all(sigma, z);
  if (corrupt) results.front().middle = 2.0 * results.front().upper + 1.0;
  for (const auto& r : results) {
    ++out.checks;
    if (!sandwich_holds(r)) {
      ++out.violations;
      const double scale = std::max(1.0, std::abs(r.middle));
      out.worst_excess = std::max(out.worst_excess,
                                  std::max(r.lower - r.middle, r.middle - r.upper) / scale);
    }
  }
  return out;
}

// Thresholds sit on actual eigenvalues half of the time so the counts are
// exercised at their boundaries.
double pick_threshold(const Spectrum& s, SplitMix64& rng, bool allow_zero) {
  const double top = std::max(s.max(), 1e-3);
  double v = 0.0;
  if (rng() >> 63) {
    v = s.lambda(static_cast<std::size_t>(uniform_in(rng, 1, static_cast<Index>(s.size()))));
  } else {
    v = 1.2 * top * uniform01(rng);
  }
  if (!allow_zero && !(v > 0.0)) v = 1e-3 * top;
  return v;
}

InstanceResult run_variational(Shape shape, int max_dim, Seed seed, bool upper) {
  SplitMix64 rng(seed);
  Index n = 0, d = 0;
  InstanceResult out;
  if (!random_dims(shape, max_dim, rng, n, d)) return out;
  const SymMatrix sigma = random_psd(d, rng);
  const DataMatrix z = random_data(n, d, rng);
  const Spectrum zz = psd_eigvals_desc(gram(z));
  const Spectrum ss = psd_eigvals_desc(sigma);
  const double t1 = pick_threshold(zz, rng, upper);
  const double t2 = pick_threshold(ss, rng, false);
  const VariationalCheck c =
      upper ? check_variational_upper(sigma, z, t1, t2) : check_variational_lower(sigma, z, t1, t2);
  out.checks = 1;
  if (!c.holds()) {
    out.violations = 1;
    out.worst_excess = c.required - c.observed;
  }
  return out;
}

ShapeTally fold(Shape shape, const std::vector<InstanceResult>& results) {
  ShapeTally t;
  t.shape = shape;
  for (const auto& r : results) {
    if (r.checks > 0) ++t.instances;
    t.checks += r.checks;
    t.violations += r.violations;
    t.worst_excess = std::max(t.worst_excess, r.worst_excess);
  }
  return t;
}

}  // namespace

std::string_view to_string(Shape s) noexcept {
  switch (s) {
    case Shape::Tall: return "d<n";
    case Shape::Square: return "d=n";
    case Shape::Wide: return "d>n";
  }
  return "?";
}

bool SandwichValidationReport::all_pass() const noexcept {
  for (const auto* group : {&ostrowski, &variational_lower, &variational_upper}) {
    for (const auto& t : *group) {
      if (t.violations != 0) return false;
    }
  }
  return true;
}

SymMatrix random_psd(Index d, SplitMix64& rng) {
  const Index k = uniform_in(rng, 1, d);
  Eigen::MatrixXd b(d, k);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < k; ++j) b(i, j) = standard_normal(rng);
  }
  return SymMatrix(Eigen::MatrixXd(b * b.transpose() / static_cast<double>(k)));
}

DataMatrix random_data(Index n, Index d, SplitMix64& rng) {
  const double scale = std::exp(2.0 * uniform01(rng) - 1.0);
  DataMatrix z(n, d);
  for (Index i = 0; i < n; ++i) {
    for (double& v : z.row(i)) v = scale * standard_normal(rng);
  }
  return z;
}

bool random_dims(Shape shape, int max_dim, SplitMix64& rng, Index& n, Index& d) {
  if (max_dim < 1) throw Error(ErrorKind::InvalidInput, "max_dim must be >= 1");
  switch (shape) {
    case Shape::Square:
      n = d = uniform_in(rng, 1, max_dim);
      return true;
    case Shape::Tall:
      if (max_dim < 2) return false;
      n = uniform_in(rng, 2, max_dim);
      d = uniform_in(rng, 1, n - 1);
      return true;
    case Shape::Wide:
      if (max_dim < 2) return false;
      d = uniform_in(rng, 2, max_dim);
      n = uniform_in(rng, 1, d - 1);
      return true;
  }
  return false;
}

SandwichValidationReport validate_sandwich(const SandwichValidationConfig& cfg) {
  if (cfg.instances < 0 || cfg.variational_instances < 0) {
    throw Error(ErrorKind::InvalidInput, "instance counts must be >= 0");
  }
  SandwichValidationReport report;
  for (std::size_t s = 0; s < kShapes.size(); ++s) {
    const Shape shape = kShapes[s];
    const std::string label(to_string(shape));
    const auto results = parallel_map<InstanceResult>(
        static_cast<std::size_t>(cfg.instances), cfg.workers, [&](std::size_t k) {
          return run_ostrowski(shape, cfg.max_dim, derive_seed(cfg.seed, k, "ostrowski " + label),
                               cfg.inject_violation && s == 0 && k == 0);
        });
    report.ostrowski[s] = fold(shape, results);
  }
  for (int lemma = 0; lemma < 2; ++lemma) {
    const bool upper = lemma == 1;
    auto& dest = upper ? report.variational_upper : report.variational_lower;
    for (std::size_t s = 0; s < kShapes.size(); ++s) {
      const Shape shape = kShapes[s];
      const std::string label = std::string(upper ? "variational-upper " : "variational-lower ") +
                                std::string(to_string(shape));
      // Spread the per-lemma count over the shapes, remainder to the first.
      const int share = cfg.variational_instances / 3 + (s == 0 ? cfg.variational_instances % 3 : 0);
      const auto results = parallel_map<InstanceResult>(
          static_cast<std::size_t>(share), cfg.workers, [&](std::size_t k) {
            return run_variational(shape, cfg.max_dim, derive_seed(cfg.seed, k, label), upper);
          });
      dest[s] = fold(shape, results);
    }
  }
  return report;
}

}  // namespace spectra
