#pragma once

#include <functional>

namespace awg {

// Matrix-free operator action y = M x (x and y never alias).
using ApplyFn = std::function<void(const double* x, double* y)>;

}  // namespace awg
