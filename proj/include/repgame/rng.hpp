#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Core>

namespace repgame {

// Deterministic random source.  The mt19937_64 engine is fully specified by
// the standard, but the library distributions are not, so the uniform and
// normal transforms are spelled out here.  Streams are derived from a root
// seed and a tag; the rule is
//
//   child_seed = splitmix64(seed ^ fnv1a64(tag))
//
// which keeps every experiment reproducible from the single configured seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : root_(seed), engine_(seed) {}

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static std::uint64_t fnv1a64(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  static std::uint64_t derive(std::uint64_t seed, std::string_view tag) {
    return splitmix64(seed ^ fnv1a64(tag));
  }

  std::uint64_t seed() const { return root_; }

  Rng child(std::string_view tag) const { return Rng(derive(root_, tag)); }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int n) {  // uniform on {0, ..., n-1}
    return static_cast<int>(static_cast<double>(n) * uniform());
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  double rademacher() { return uniform() < 0.5 ? -1.0 : 1.0; }

  Eigen::VectorXd normal_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  Eigen::MatrixXd normal_matrix(int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = normal();
    return m;
  }

 private:
  std::uint64_t root_;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline Rng make_rng(std::uint64_t seed, std::string_view tag) {
  return Rng(Rng::derive(seed, tag));
}

}  // namespace repgame
