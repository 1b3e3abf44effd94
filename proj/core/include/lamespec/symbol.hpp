#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lamespec/lame_parameters.hpp"

namespace lamespec {

/// Explicit re/im pair used for the resolvent parameter lambda.
struct ComplexScalar {
    double re = 0.0;
    double im = 0.0;

    std::complex<double> value() const noexcept { return {re, im}; }
    static ComplexScalar from(std::complex<double> z) noexcept { return {z.real(), z.imag()}; }

    friend bool operator==(const ComplexScalar&, const ComplexScalar&) = default;
};

/// The principal symbol A(xi) = tau |xi|^2 I + (tau + mu) xi xi^T, stored
/// dense row-major.
class SymbolMatrix {
public:
    SymbolMatrix(LameParameters params, std::vector<double> xi);

    std::size_t dim() const noexcept { return xi_.size(); }
    const LameParameters& params() const noexcept { return params_; }
    const std::vector<double>& xi() const noexcept { return xi_; }
    const std::vector<double>& entries() const noexcept { return entries_; }
    double xi_norm_sq() const noexcept { return xi_norm_sq_; }

    double operator()(std::size_t row, std::size_t col) const noexcept {
        return entries_[row * dim() + col];
    }

private:
    LameParameters params_;
    std::vector<double> xi_;
    double xi_norm_sq_;
    std::vector<double> entries_;
};

SymbolMatrix build_symbol(const LameParameters& params, std::span<const double> xi);

/// Default relative pole-proximity tolerance: lambda is rejected when it
/// lies within tol * max(1, (2 tau + mu) |xi|^2) of either pole.
inline constexpr double kDefaultPoleTolerance = 1e-8;

/// Tr((lambda I - A(xi))^{-1}) from the factored closed form. Only |xi|^2
/// enters. Throws ErrorKind::PoleProximity near tau|xi|^2 or (2tau+mu)|xi|^2
/// (for n = 1 the shear pole is removable and is not checked).
ComplexScalar resolvent_trace_closed(const LameParameters& params, int n, double xi_norm_sq,
                                     ComplexScalar lambda,
                                     double pole_tolerance = kDefaultPoleTolerance);

/// Same trace by dense partial-pivot LU inversion of lambda I - A(xi).
/// Throws ErrorKind::SingularMatrix when a pivot falls below
/// pivot_tolerance * max(1, (2 tau + mu) |xi|^2).
ComplexScalar resolvent_trace_bruteforce(const LameParameters& params, std::span<const double> xi,
                                         ComplexScalar lambda,
                                         double pivot_tolerance = kDefaultPoleTolerance);

/// det(lambda I - A) = (lambda - tau|xi|^2)^(n-1) (lambda - (2tau+mu)|xi|^2).
ComplexScalar symbol_determinant_closed(const LameParameters& params, int n, double xi_norm_sq,
                                        ComplexScalar lambda);

/// det(lambda I - A) as the signed product of LU pivots.
ComplexScalar symbol_determinant_dense(const LameParameters& params, std::span<const double> xi,
                                       ComplexScalar lambda);

/// Spectral norm of b0 (lambda I - A) - I with b0 the numerically inverted
/// resolvent symbol. For an x-independent symbol every higher parametrix
/// term vanishes, so this is pure round-off.
double parametrix_residual(const LameParameters& params, std::span<const double> xi,
                           ComplexScalar lambda, double pole_tolerance = kDefaultPoleTolerance);

/// (n-1) exp(-t tau |xi|^2) + exp(-t (2tau+mu) |xi|^2).
double residue_heat_symbol(const LameParameters& params, int n, double xi_norm_sq, double t);

/// Circle in the lambda plane, traversed counterclockwise.
struct Contour {
    double center = 0.0;
    double radius = 1.0;
    int nodes = 4096;
};

/// Circle centred between the two poles with radius 1.5 x half-separation
/// plus |centre|; radius 1 when xi = 0 collapses both poles onto 0.
Contour default_contour(const LameParameters& params, double xi_norm_sq, int nodes = 4096);

/// (1 / 2 pi i) \oint e^{-t lambda} Tr((lambda I - A)^{-1}) d lambda by the
/// composite trapezoid rule on `contour`. Throws ContourMisconfigured if
/// the circle does not strictly enclose both poles.
double contour_integral_oracle(const LameParameters& params, int n, double xi_norm_sq, double t,
                               std::optional<Contour> contour = std::nullopt);

struct SymbolCheckReport {
    int n = 0;
    int draws = 0;
    std::uint64_t seed = 0;
    double max_rel_err_trace = 0.0;
    double max_rel_err_determinant = 0.0;
    double max_parametrix_residual = 0.0;
    double max_rel_err_scaling = 0.0;
    double max_rel_err_eigenvalues = 0.0;
    double tolerance = 1e-10;
    bool pass = false;

    double max_rel_err() const noexcept;
};

/// Randomized agreement check between the closed forms and the dense
/// oracles for dimension n. Draws admissible (tau, mu), xi != 0 and
/// complex lambda at distance >= 0.1 (2tau+mu)|xi|^2 from both poles.
SymbolCheckReport symbol_property_check(int n, int draws, std::uint64_t seed = 42,
                                        double tolerance = 1e-10);

}  // namespace lamespec
