#pragma once

// Deterministic sample plans: uniform / low-discrepancy grids plus seeded
// random points. The random stream is splitmix64 mapped to [0, 1) by the top
// 53 bits, so results do not depend on the standard library's distributions.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace helixgeom {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Derives an independent seed for a named sub-stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
  return g.next();
}

/// Parameter sampling along a curve: `uniform` evenly spaced points
/// (endpoints included) plus `random` seeded points.
struct SamplePlan {
  int uniform = 64;
  int random = 16;
  std::uint64_t seed = 42;

  std::vector<double> parameters(Interval domain) const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(uniform + random));
    if (uniform == 1) {
      out.push_back(0.5 * (domain.lo + domain.hi));
    } else {
      for (int i = 0; i < uniform; ++i)
        out.push_back(domain.lo + domain.width() * static_cast<double>(i) / (uniform - 1));
    }
    SplitMix64 rng(seed);
    for (int i = 0; i < random; ++i) out.push_back(rng.uniform(domain.lo, domain.hi));
    return out;
  }

  /// Same shape, `factor` times denser, independent seed.
  SamplePlan denser(int factor, std::uint64_t stream = 1) const {
    return SamplePlan{uniform * factor, random * factor, derive_seed(seed, stream)};
  }
};

inline double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

/// Points of the Halton sequence (bases 2, 3, 5, ...) scaled to a box,
/// starting at index 1 to skip the origin.
inline std::vector<std::vector<double>> halton_points(const std::vector<Interval>& box, int count,
                                                      std::uint64_t offset = 0) {
  static constexpr std::array<std::uint64_t, 12> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (box.size() > primes.size()) throw std::invalid_argument("halton_points: too many dimensions");
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<double> p(box.size());
    for (std::size_t d = 0; d < box.size(); ++d)
      p[d] = box[d].lo + box[d].width() * radical_inverse(offset + static_cast<std::uint64_t>(i) + 1, primes[d]);
    out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<std::vector<double>> random_points(const std::vector<Interval>& box, int count,
                                                      std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<double> p(box.size());
    for (std::size_t d = 0; d < box.size(); ++d) p[d] = rng.uniform(box[d].lo, box[d].hi);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace helixgeom
