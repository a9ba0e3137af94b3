#pragma once

#include "dsp/classes.hpp"

namespace dsp {

/// sum_j d_j >= 2n^2 - 2.
bool check_alpha(const DerivedQuantities& dq, int n);

/// For every j, the sum of the r's omitting r_j is at least n.
bool check_beta(const DerivedQuantities& dq, int n);

}  // namespace dsp
