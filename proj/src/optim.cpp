#include "dhc/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace dhc {

void sgd_step(ParameterSet& params, const SgdOptions& opt) {
  if (opt.lr <= 0.0) throw std::invalid_argument("sgd_step: lr must be > 0");
  if (opt.momentum < 0.0 || opt.momentum >= 1.0) throw std::invalid_argument("sgd_step: momentum must be in [0, 1)");
  params.bump_step();
  for (auto& p : params.all()) {
    for (size_t i = 0; i < p.value.data.size(); ++i) {
      double v = opt.momentum * p.velocity.data[i] + p.grad.data[i];
      p.velocity.data[i] = v;
      p.value.data[i] -= opt.lr * v;
    }
  }
}

void adam_step(ParameterSet& params, const AdamOptions& opt) {
  if (opt.lr <= 0.0) throw std::invalid_argument("adam_step: lr must be > 0");
  if (opt.beta1 <= 0.0 || opt.beta1 >= 1.0) throw std::invalid_argument("adam_step: beta1 must be in (0, 1)");
  if (opt.beta2 <= 0.0 || opt.beta2 >= 1.0) throw std::invalid_argument("adam_step: beta2 must be in (0, 1)");
  if (opt.eps <= 0.0) throw std::invalid_argument("adam_step: eps must be > 0");
  params.bump_step();
  const double t = static_cast<double>(params.step_count());
  const double bc1 = 1.0 - std::pow(opt.beta1, t);
  const double bc2 = 1.0 - std::pow(opt.beta2, t);
  for (auto& p : params.all()) {
    for (size_t i = 0; i < p.value.data.size(); ++i) {
      const double g = p.grad.data[i];
      const double m = opt.beta1 * p.adam_m.data[i] + (1.0 - opt.beta1) * g;
      const double v = opt.beta2 * p.adam_v.data[i] + (1.0 - opt.beta2) * g * g;
      p.adam_m.data[i] = m;
      p.adam_v.data[i] = v;
      p.value.data[i] -= opt.lr * (m / bc1) / (std::sqrt(v / bc2) + opt.eps);
    }
  }
}

}  // namespace dhc
