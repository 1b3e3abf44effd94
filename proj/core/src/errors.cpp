#include "lamespec/errors.hpp"

namespace lamespec {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid_argument";
        case ErrorKind::PoleProximity: return "pole_proximity";
        case ErrorKind::SingularMatrix: return "singular_matrix";
        case ErrorKind::ContourMisconfigured: return "contour_misconfigured";
        case ErrorKind::InconsistentFit: return "inconsistent_fit";
        case ErrorKind::InconsistentInput: return "inconsistent_input";
        case ErrorKind::DegenerateDomain: return "degenerate_domain";
        case ErrorKind::UnachievableResolution: return "unachievable_resolution";
        case ErrorKind::InvalidMesh: return "invalid_mesh";
        case ErrorKind::EmptyInterior: return "empty_interior";
        case ErrorKind::FactorizationFailure: return "factorization_failure";
        case ErrorKind::NonConvergence: return "non_convergence";
        case ErrorKind::IncompleteSpectrum: return "incomplete_spectrum";
        case ErrorKind::EmptyWindow: return "empty_window";
        case ErrorKind::RankDeficient: return "rank_deficient";
        case ErrorKind::Schema: return "schema";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace lamespec
