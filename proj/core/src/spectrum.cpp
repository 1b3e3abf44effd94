#include "lamespec/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "lamespec/errors.hpp"

namespace lamespec {

std::string provenance_kind(const Provenance& provenance) {
    struct Visitor {
        std::string operator()(const FemProvenance&) const { return "fem"; }
        std::string operator()(const AnalyticIntervalProvenance&) const { return "analytic_interval"; }
        std::string operator()(const AnalyticDiskProvenance&) const { return "analytic_disk"; }
        std::string operator()(const ExternalProvenance&) const { return "external"; }
    };
    return std::visit(Visitor{}, provenance);
}

void Spectrum::validate(double zero_tol) const {
    if (dim < 1) throw Error(ErrorKind::InconsistentInput, "spectrum dimension must be >= 1");
    if (eigenvalues.empty()) throw Error(ErrorKind::InconsistentInput, "spectrum is empty");
    const double scale = std::max(1.0, std::abs(eigenvalues.back()));
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        const double v = eigenvalues[i];
        if (!std::isfinite(v)) throw Error(ErrorKind::InconsistentInput, "non-finite eigenvalue");
        if (v < -zero_tol * scale) {
            throw Error(ErrorKind::InconsistentInput, "negative eigenvalue " + std::to_string(v));
        }
        if (i > 0 && v < eigenvalues[i - 1]) {
            throw Error(ErrorKind::InconsistentInput, "eigenvalues are not ascending at index " + std::to_string(i));
        }
    }
    if (bc == BoundaryCondition::Dirichlet && !(eigenvalues.front() > zero_tol * scale)) {
        throw Error(ErrorKind::InconsistentInput, "Dirichlet spectrum must have lambda_1 > 0");
    }
}

std::size_t Spectrum::zero_mode_count(double zero_tol) const {
    if (eigenvalues.empty()) return 0;
    const double scale = std::max(1.0, std::abs(eigenvalues.back()));
    return static_cast<std::size_t>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                                   [&](double v) { return std::abs(v) <= zero_tol * scale; }));
}

}  // namespace lamespec
