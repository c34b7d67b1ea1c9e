#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace mielab {

// Binary entropy in nats, endpoints defined by continuity (0 ln 0 := 0).
inline double h2(double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("h2: argument outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
}

inline double nats_to_bits(double nats) { return nats / std::log(2.0); }

// splitmix64, used to derive independent per-task seed streams from a master
// seed so that results do not depend on how work is distributed over threads.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 task_rng(std::uint64_t master_seed, std::uint64_t task_index) {
  return std::mt19937_64(splitmix64(splitmix64(master_seed) ^ splitmix64(task_index + 0x51ed2701)));
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t n = 0;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
  MeanStderr r;
  r.n = xs.size();
  if (xs.empty()) return r;
  double s = 0.0;
  for (double x : xs) s += x;
  r.mean = s / xs.size();
  if (xs.size() > 1) {
    double v = 0.0;
    for (double x : xs) v += (x - r.mean) * (x - r.mean);
    v /= (xs.size() - 1);
    r.stderr_ = std::sqrt(v / xs.size());
  }
  return r;
}

}  // namespace mielab
