#pragma once

#include "dhc/params.hpp"

namespace dhc {

struct SgdOptions {
  double lr = 0.01;
  double momentum = 0.0;
};

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Both steppers consume the current gradient buffers, bump the shared step
// counter once, and leave the gradients untouched (callers zero them at the
// start of the next minibatch).
void sgd_step(ParameterSet& params, const SgdOptions& opt);
void adam_step(ParameterSet& params, const AdamOptions& opt);

}  // namespace dhc
