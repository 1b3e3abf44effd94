#include "lamespec/lame_parameters.hpp"

#include <cmath>
#include <string>

#include "lamespec/errors.hpp"

namespace lamespec {

LameParameters::LameParameters(double tau, double mu) : tau_(tau), mu_(mu) {
    if (!std::isfinite(tau) || !std::isfinite(mu)) {
        throw Error(ErrorKind::InvalidArgument, "Lame parameters must be finite");
    }
    if (!(tau > 0.0)) {
        throw Error(ErrorKind::InvalidArgument,
                    "Lame parameter tau must be positive, got " + std::to_string(tau));
    }
    if (!(tau + mu > 0.0)) {
        throw Error(ErrorKind::InvalidArgument,
                    "Lame parameters must satisfy tau + mu > 0, got tau + mu = " +
                        std::to_string(tau + mu));
    }
}

std::string_view to_string(BoundaryCondition bc) noexcept {
    return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "neumann";
}

BoundaryCondition parse_boundary_condition(std::string_view text) {
    if (text == "dirichlet" || text == "Dirichlet") return BoundaryCondition::Dirichlet;
    if (text == "neumann" || text == "Neumann") return BoundaryCondition::Neumann;
    throw Error(ErrorKind::InvalidArgument,
                "unknown boundary condition '" + std::string(text) + "'",
                "use 'dirichlet' or 'neumann'");
}

}  // namespace lamespec
