#pragma once

#include <span>
#include <string>

#include "lamespec/trace_fit.hpp"

namespace lamespec {

/// Self-contained SVG of theta(t) t^{n/2} against sqrt(t): samples as dots,
/// the fitted A + B sqrt(t) as a line and the full fit (with C t) dashed.
std::string trace_fit_svg(std::span<const TraceSample> samples, const FitResult& fit, int n);

}  // namespace lamespec
