#include "dhc/params.hpp"

#include <cmath>
#include <stdexcept>

namespace dhc {

Param& ParameterSet::add(const std::string& name, int rows, int cols) {
  if (index_.count(name)) throw std::invalid_argument("ParameterSet: duplicate parameter " + name);
  Param p;
  p.name = name;
  p.value = Matrix(rows, cols);
  p.grad = Matrix(rows, cols);
  p.adam_m = Matrix(rows, cols);
  p.adam_v = Matrix(rows, cols);
  p.velocity = Matrix(rows, cols);
  index_[name] = params_.size();
  params_.push_back(std::move(p));
  return params_.back();
}

Param& ParameterSet::get(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::invalid_argument("ParameterSet: unknown parameter " + name);
  return params_[it->second];
}

const Param& ParameterSet::get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::invalid_argument("ParameterSet: unknown parameter " + name);
  return params_[it->second];
}

void ParameterSet::zero_grads() {
  for (auto& p : params_) p.grad.fill(0.0);
}

size_t ParameterSet::total_values() const {
  size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

void init_uniform_scaled(Param& p, Rng& rng) {
  const double s = std::sqrt(6.0 / (p.value.rows + p.value.cols));
  for (double& v : p.value.data) v = rng.uniform(-s, s);
}

}  // namespace dhc
