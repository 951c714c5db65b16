#pragma once

#include <functional>

namespace offaxis::detail {

/// Location of the global maximum of a smooth function on [lo, hi]: dense scan then golden refinement.
double argmax_on_interval(const std::function<double(double)>& f, double lo, double hi);

}  // namespace offaxis::detail
