#pragma once

#include <cstdint>
#include <random>

namespace amalgam {

// Seeded generator with a platform independent stream. std::mt19937_64 output
// is fixed by the standard; the distributions in <random> are not, so the
// conversions to doubles and ranges are done here.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // Uniform integer in [lo, hi].
  long long integer(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(engine_() % span);
  }
  bool coin() { return (engine_() >> 63) != 0; }
  std::uint64_t raw() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

}  // namespace amalgam
