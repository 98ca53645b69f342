#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "cmsa/error.hpp"
#include "cmsa/rng.hpp"

namespace cmsa {

using Vertex = std::int32_t;

inline constexpr double kNoEdge = std::numeric_limits<double>::infinity();

/// Complete digraph on n vertices with a (weight, cost) pair per ordered edge.
///
/// Storage is dense row-major: entry (i, j) describes the edge i -> j. The
/// diagonal holds +inf so that no minimum scan can select a loop. Instances
/// are immutable once built and can be shared between threads.
class Instance {
 public:
  Instance(std::size_t n, double s, std::uint64_t seed, std::vector<double> weights,
           std::vector<double> costs)
      : n_(n), s_(s), seed_(seed), weights_(std::move(weights)), costs_(std::move(costs)) {
    require(n_ >= 2, Errc::invalid_argument, "instance needs n >= 2");
    require(weights_.size() == n_ * n_ && costs_.size() == n_ * n_, Errc::shape,
            "weight/cost arrays must hold n*n entries");
    for (std::size_t i = 0; i < n_; ++i) {
      weights_[i * n_ + i] = kNoEdge;
      costs_[i * n_ + i] = kNoEdge;
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j) continue;
        const double w = weights_[i * n_ + j];
        const double c = costs_[i * n_ + j];
        require(std::isfinite(w) && std::isfinite(c) && w >= 0.0 && c >= 0.0,
                Errc::invalid_argument, "edge weights and costs must be finite and >= 0");
      }
    }
  }

  std::size_t n() const noexcept { return n_; }
  double s() const noexcept { return s_; }
  std::uint64_t seed() const noexcept { return seed_; }

  double weight(Vertex i, Vertex j) const noexcept { return weights_[index(i, j)]; }
  double cost(Vertex i, Vertex j) const noexcept { return costs_[index(i, j)]; }

  std::span<const double> weight_row(Vertex i) const noexcept {
    return {weights_.data() + static_cast<std::size_t>(i) * n_, n_};
  }
  std::span<const double> cost_row(Vertex i) const noexcept {
    return {costs_.data() + static_cast<std::size_t>(i) * n_, n_};
  }

  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<double>& costs() const noexcept { return costs_; }

  friend bool operator==(const Instance& a, const Instance& b) {
    auto same_bits = [](const std::vector<double>& x, const std::vector<double>& y) {
      return x.size() == y.size() &&
             std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
    };
    return a.n_ == b.n_ && std::bit_cast<std::uint64_t>(a.s_) == std::bit_cast<std::uint64_t>(b.s_) &&
           a.seed_ == b.seed_ && same_bits(a.weights_, b.weights_) &&
           same_bits(a.costs_, b.costs_);
  }

 private:
  std::size_t index(Vertex i, Vertex j) const noexcept {
    return static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j);
  }

  std::size_t n_;
  double s_;
  std::uint64_t seed_;
  std::vector<double> weights_;
  std::vector<double> costs_;
};

/// U^exponent, skipping pow for the uniform case.
inline double power_transform(double u, double exponent) noexcept {
  return exponent == 1.0 ? u : std::pow(u, exponent);
}

/// Weight of edge (i, j) in generate(n, s, seed). Independent of n.
inline double edge_weight_draw(std::uint64_t seed, Vertex i, Vertex j, double s) noexcept {
  return power_transform(rng::uniform(seed, static_cast<std::uint64_t>(i),
                                      static_cast<std::uint64_t>(j), rng::Stream::weight),
                         s);
}

inline double edge_cost_draw(std::uint64_t seed, Vertex i, Vertex j, double s) noexcept {
  return power_transform(rng::uniform(seed, static_cast<std::uint64_t>(i),
                                      static_cast<std::uint64_t>(j), rng::Stream::cost),
                         s);
}

namespace detail {

template <class WeightOf, class CostOf>
Instance build(std::size_t n, double s, std::uint64_t seed, WeightOf&& weight_of,
               CostOf&& cost_of) {
  std::vector<double> w(n * n, kNoEdge);
  std::vector<double> c(n * n, kNoEdge);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      w[i * n + j] = weight_of(static_cast<Vertex>(i), static_cast<Vertex>(j));
      c[i * n + j] = cost_of(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  return Instance(n, s, seed, std::move(w), std::move(c));
}

inline void check_generate_args(std::size_t n, double s) {
  require(n >= 2, Errc::invalid_argument, "generate: n must be >= 2");
  require(n <= (std::size_t{1} << 31) - 1, Errc::invalid_argument, "generate: n too large");
  require(s > 0.0 && s <= 1.0, Errc::invalid_argument, "generate: s must lie in (0, 1]");
}

}  // namespace detail

/// Each off-diagonal edge receives independent U^s weight and cost.
inline Instance generate(std::size_t n, double s, std::uint64_t seed) {
  detail::check_generate_args(n, s);
  return detail::build(
      n, s, seed, [&](Vertex i, Vertex j) { return edge_weight_draw(seed, i, j, s); },
      [&](Vertex i, Vertex j) { return edge_cost_draw(seed, i, j, s); });
}

/// Three instances driven by the same per-edge uniforms: power laws with
/// exponents s + eps and s - eps bracket the distribution given by its
/// quantile function.
struct SandwichPair {
  Instance lower;
  Instance upper;
  Instance actual;
  double epsilon_n;
};

inline double sandwich_epsilon(std::size_t n) { return 1.0 / (10.0 * std::log(static_cast<double>(n))); }

inline SandwichPair generate_sandwich(std::size_t n, double s,
                                      const std::function<double(double)>& inverse_cdf,
                                      std::uint64_t seed) {
  require(n > 2, Errc::invalid_argument, "generate_sandwich: n must be > 2");
  require(s > 0.0 && s <= 1.0, Errc::invalid_argument, "generate_sandwich: s must lie in (0, 1]");
  require(static_cast<bool>(inverse_cdf), Errc::invalid_argument,
          "generate_sandwich: quantile function required");
  const double eps = sandwich_epsilon(n);
  require(s - eps > 0.0, Errc::invalid_argument, "generate_sandwich: s - eps_n must be positive");

  auto uw = [seed](Vertex i, Vertex j) {
    return rng::uniform(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j),
                        rng::Stream::weight);
  };
  auto uc = [seed](Vertex i, Vertex j) {
    return rng::uniform(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j),
                        rng::Stream::cost);
  };
  auto power = [&](double exponent) {
    return detail::build(
        n, exponent, seed, [&](Vertex i, Vertex j) { return std::pow(uw(i, j), exponent); },
        [&](Vertex i, Vertex j) { return std::pow(uc(i, j), exponent); });
  };
  Instance actual = detail::build(
      n, s, seed, [&](Vertex i, Vertex j) { return inverse_cdf(uw(i, j)); },
      [&](Vertex i, Vertex j) { return inverse_cdf(uc(i, j)); });
  return SandwichPair{power(s + eps), power(s - eps), std::move(actual), eps};
}

// ---------------------------------------------------------------------------
// Binary format (little-endian):
//   "CMSA" | u32 version | u64 n | f64 s | u64 seed | f64[n*n] weights | f64[n*n] costs

inline constexpr char kInstanceMagic[4] = {'C', 'M', 'S', 'A'};
inline constexpr std::uint32_t kInstanceVersion = 1;

namespace detail {

template <class T>
void put_le(std::ostream& out, T value) {
  auto bits = std::bit_cast<std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>>(value);
  unsigned char bytes[sizeof(T)];
  for (std::size_t k = 0; k < sizeof(T); ++k) bytes[k] = static_cast<unsigned char>(bits >> (8 * k));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(const unsigned char* p) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) bits |= static_cast<U>(p[k]) << (8 * k);
  return std::bit_cast<T>(bits);
}

}  // namespace detail

inline void save(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), Errc::io, "cannot open '" + path + "' for writing");
  out.write(kInstanceMagic, 4);
  detail::put_le<std::uint32_t>(out, kInstanceVersion);
  detail::put_le<std::uint64_t>(out, inst.n());
  detail::put_le<double>(out, inst.s());
  detail::put_le<std::uint64_t>(out, inst.seed());
  for (double w : inst.weights()) detail::put_le<double>(out, w);
  for (double c : inst.costs()) detail::put_le<double>(out, c);
  out.flush();
  require(static_cast<bool>(out), Errc::io, "write failed for '" + path + "'");
}

inline Instance load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), Errc::io, "cannot open '" + path + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  constexpr std::size_t header = 4 + 4 + 8 + 8 + 8;
  require(bytes.size() >= header, Errc::format, "'" + path + "' is too short for a header");
  require(std::memcmp(bytes.data(), kInstanceMagic, 4) == 0, Errc::format,
          "'" + path + "' has bad magic bytes");
  const auto version = detail::get_le<std::uint32_t>(bytes.data() + 4);
  require(version == kInstanceVersion, Errc::format, "unsupported instance version");
  const auto n = detail::get_le<std::uint64_t>(bytes.data() + 8);
  const auto s = detail::get_le<double>(bytes.data() + 16);
  const auto seed = detail::get_le<std::uint64_t>(bytes.data() + 24);
  require(n >= 2 && n < (std::uint64_t{1} << 24), Errc::shape, "header declares invalid n");
  const std::size_t cells = static_cast<std::size_t>(n * n);
  require(bytes.size() == header + 2 * cells * sizeof(double), Errc::shape,
          "payload size does not match n = " + std::to_string(n));
  std::vector<double> w(cells), c(cells);
  const unsigned char* p = bytes.data() + header;
  for (std::size_t k = 0; k < cells; ++k, p += 8) w[k] = detail::get_le<double>(p);
  for (std::size_t k = 0; k < cells; ++k, p += 8) c[k] = detail::get_le<double>(p);
  return Instance(static_cast<std::size_t>(n), s, seed, std::move(w), std::move(c));
}

/// One row per off-diagonal edge: i,j,weight,cost (0-based vertices).
inline void write_csv(const Instance& inst, std::ostream& out) {
  out << "i,j,weight,cost\n";
  char buf[96];
  const auto n = static_cast<Vertex>(inst.n());
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      if (i == j) continue;
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", i, j, inst.weight(i, j), inst.cost(i, j));
      out << buf;
    }
  }
}

}  // namespace cmsa
