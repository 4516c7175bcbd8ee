#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "dhc/matrix.hpp"
#include "dhc/rng.hpp"

namespace dhc {

struct Param {
  std::string name;
  Matrix value;
  Matrix grad;
  // Optimizer state, same shape as value. Allocated by add().
  Matrix adam_m;
  Matrix adam_v;
  Matrix velocity;
};

// Named parameters with matching gradient buffers, kept in insertion order.
// Insertion order is the manifest order for checkpoints and the draw order
// for seeded initialization, so it must be deterministic.
class ParameterSet {
 public:
  Param& add(const std::string& name, int rows, int cols);
  Param& get(const std::string& name);
  const Param& get(const std::string& name) const;
  bool contains(const std::string& name) const { return index_.count(name) > 0; }

  std::vector<Param>& all() { return params_; }
  const std::vector<Param>& all() const { return params_; }

  void zero_grads();
  size_t total_values() const;

  int64_t step_count() const { return step_; }
  void bump_step() { ++step_; }

 private:
  std::vector<Param> params_;
  std::unordered_map<std::string, size_t> index_;
  int64_t step_ = 0;
};

// Fills value with draws uniform in [-s, s], s = sqrt(6 / (fan_in + fan_out)),
// row-major order. fan_in = rows, fan_out = cols.
void init_uniform_scaled(Param& p, Rng& rng);

}  // namespace dhc
