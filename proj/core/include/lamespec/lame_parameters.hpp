#pragma once

#include <string_view>

namespace lamespec {

/// Isotropic Lamé constants. `tau` multiplies the Laplacian and `mu` enters
/// only through tau + mu in front of grad(div). Admissible iff tau > 0 and
/// tau + mu > 0, which makes the two wave factors tau < 2 tau + mu positive
/// and distinct.
class LameParameters {
public:
    LameParameters(double tau, double mu);

    double tau() const noexcept { return tau_; }
    double mu() const noexcept { return mu_; }

    /// Shear factor: eigenvalue of the symbol per unit |xi|^2 on the
    /// (n-1)-dimensional transverse subspace.
    double shear() const noexcept { return tau_; }
    /// Pressure factor 2 tau + mu: eigenvalue per unit |xi|^2 along xi.
    double pressure() const noexcept { return 2.0 * tau_ + mu_; }

    LameParameters scaled(double s) const { return {s * tau_, s * mu_}; }

    friend bool operator==(const LameParameters&, const LameParameters&) = default;

private:
    double tau_;
    double mu_;
};

enum class BoundaryCondition { Dirichlet, Neumann };

std::string_view to_string(BoundaryCondition bc) noexcept;
BoundaryCondition parse_boundary_condition(std::string_view text);

/// -1 for Dirichlet, +1 for Neumann: the sign in front of the boundary term.
inline double boundary_sign(BoundaryCondition bc) noexcept {
    return bc == BoundaryCondition::Dirichlet ? -1.0 : 1.0;
}

}  // namespace lamespec
