#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lamespec/domain.hpp"
#include "lamespec/lame_parameters.hpp"

namespace lamespec {

struct FemProvenance {
    std::string domain_kind;
    std::size_t nodes = 0;
    std::size_t triangles = 0;
    std::size_t unknowns = 0;
    int refinement_level = 0;
    double max_edge = 0.0;
    bool extrapolated = false;
};

struct AnalyticIntervalProvenance {
    double length = 0.0;
};

struct AnalyticDiskProvenance {
    double radius = 0.0;
    int m_max = 0;
    double lambda_max = 0.0;
};

struct ExternalProvenance {
    std::string source;
};

using Provenance =
    std::variant<FemProvenance, AnalyticIntervalProvenance, AnalyticDiskProvenance, ExternalProvenance>;

std::string provenance_kind(const Provenance& provenance);

/// Eigenvalues of one boundary problem, ascending and counted with
/// multiplicity.
struct Spectrum {
    int dim = 2;
    BoundaryCondition bc = BoundaryCondition::Dirichlet;
    LameParameters params{1.0, 0.0};
    std::vector<double> eigenvalues;
    Provenance provenance = ExternalProvenance{};
    std::optional<Domain> domain_meta;
    std::vector<std::string> notes;

    std::size_t count() const noexcept { return eigenvalues.size(); }

    /// Throws InconsistentInput unless the eigenvalues are finite, ascending
    /// and non-negative, with lambda_1 > 0 for Dirichlet. Values in
    /// [-zero_tol * lambda_max, 0) count as zero.
    void validate(double zero_tol = 1e-8) const;

    /// Eigenvalues within zero_tol * lambda_max of zero.
    std::size_t zero_mode_count(double zero_tol = 1e-8) const;
};

}  // namespace lamespec
