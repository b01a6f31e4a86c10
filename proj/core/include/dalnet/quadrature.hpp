#pragma once

#include <functional>

namespace dalnet {

// Adaptive Simpson integration of f over [a, b] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 48);

}  // namespace dalnet
