#include "lamespec/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "lamespec/errors.hpp"
#include "lamespec/heat_kernel.hpp"
#include "lamespec/special_functions.hpp"

namespace lamespec {

namespace {

constexpr double kPi = std::numbers::pi;

void check_length(double length, const char* what) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be positive and finite");
    }
}

struct Bracket {
    int m = 0;
    DiskBranch branch = DiskBranch::Coupled;
    double lo = 0.0;
    double hi = 0.0;
};

/// Illinois false position on a sign-change bracket.
template <typename F>
double refine_root(F&& f, double lo, double hi, double rel_tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    int side = 0;
    for (int it = 0; it < 200 && hi - lo > rel_tol * hi; ++it) {
        double x = (lo * fhi - hi * flo) / (fhi - flo);
        if (!(x > lo && x < hi) || it % 8 == 7) x = 0.5 * (lo + hi);
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (fhi > 0.0)) {
            hi = x;
            fhi = fx;
            if (side == 1) flo *= 0.5;
            side = 1;
        } else {
            lo = x;
            flo = fx;
            if (side == -1) fhi *= 0.5;
            side = -1;
        }
    }
    return std::abs(flo) < std::abs(fhi) ? lo : hi;
}

double j1_of(double x) { return special::bessel_j(1, x); }

}  // namespace

Spectrum interval_spectrum_1d(const LameParameters& params, double length, BoundaryCondition bc, int count) {
    check_length(length, "interval length");
    if (count < 1) throw Error(ErrorKind::InvalidArgument, "eigenvalue count must be >= 1");
    Spectrum s;
    s.dim = 1;
    s.bc = bc;
    s.params = params;
    s.eigenvalues.resize(static_cast<std::size_t>(count));
    const int offset = bc == BoundaryCondition::Dirichlet ? 1 : 0;
    const double unit = kPi / length;
    for (int k = 0; k < count; ++k) {
        const double wave = (k + offset) * unit;
        s.eigenvalues[static_cast<std::size_t>(k)] = params.pressure() * wave * wave;
    }
    s.provenance = AnalyticIntervalProvenance{length};
    s.domain_meta = Domain{Interval{length}};
    return s;
}

double theta_trace_1d(const LameParameters& params, double length, BoundaryCondition bc, double t) {
    check_length(length, "interval length");
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
    const double rate = params.pressure() * (kPi / length) * (kPi / length) * t;
    double sum = bc == BoundaryCondition::Neumann ? 1.0 : 0.0;
    double carry = 0.0;
    for (long k = 1;; ++k) {
        const double term = std::exp(-rate * static_cast<double>(k) * static_cast<double>(k));
        // Kahan summation.
        const double y = term - carry;
        const double next = sum + y;
        carry = (next - sum) - y;
        sum = next;
        if (term < 1e-16) break;
    }
    return sum;
}

DiskDeterminant disk_determinant(const LameParameters& params, double radius, int m, double lambda) {
    check_length(radius, "radius");
    if (m < 0) throw Error(ErrorKind::InvalidArgument, "angular index must be >= 0");
    if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
    const double a = radius * std::sqrt(lambda / params.pressure());
    const double b = radius * std::sqrt(lambda / params.tau());
    const double ja = special::bessel_j(m, a);
    const double jb = special::bessel_j(m, b);
    const double dja = special::bessel_j_derivative(m, a);
    const double djb = special::bessel_j_derivative(m, b);
    const double mm = static_cast<double>(m) * m;
    return {mm * ja * jb - a * b * dja * djb, mm * std::abs(ja * jb) + a * b * std::abs(dja * djb)};
}

double disk_weyl_band(const LameParameters& params, double radius, double lambda) {
    return 0.5 * std::abs(weyl_boundary_correction(params, 2, 2.0 * kPi * radius, lambda,
                                                   BoundaryCondition::Dirichlet)) +
           10.0;
}

DiskOracleResult disk_dirichlet_roots(const LameParameters& params, double radius, double lambda_max,
                                      const DiskOracleOptions& options) {
    check_length(radius, "radius");
    if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
        throw Error(ErrorKind::InvalidArgument, "lambda_max must be positive and finite");
    }
    const double tau = params.tau();
    const double unit = tau / (radius * radius);
    const double step = options.scan_step > 0.0 ? options.scan_step : 0.1 * unit;
    if (step > 0.5 * unit * (1.0 + 1e-12)) {
        throw Error(ErrorKind::InvalidArgument, "scan step exceeds 0.5 tau / R^2 and may skip close roots");
    }
    const int m_bound = 1 + static_cast<int>(std::floor(radius * std::sqrt(lambda_max / tau)));
    const int m_max = options.m_max >= 0 ? options.m_max : m_bound;
    const double p_speed = params.pressure();

    // Scan: one Bessel sequence per grid point serves every angular index.
    std::vector<Bracket> brackets;
    std::vector<double> prev_d(static_cast<std::size_t>(m_max) + 1, 0.0);
    std::vector<bool> have_prev(static_cast<std::size_t>(m_max) + 1, false);
    double prev_j1a = 0.0;
    double prev_j1b = 0.0;
    double prev_lambda = 0.0;
    const auto steps = static_cast<long>(std::ceil(lambda_max / step));
    for (long i = 1; i <= steps; ++i) {
        const double lambda = std::min(lambda_max, static_cast<double>(i) * step);
        const double a = radius * std::sqrt(lambda / p_speed);
        const double b = radius * std::sqrt(lambda / tau);
        const auto ja = special::bessel_j_sequence(m_max + 1, a);
        const auto jb = special::bessel_j_sequence(m_max + 1, b);
        if (i > 1) {
            if ((ja[1] > 0.0) != (prev_j1a > 0.0) || ja[1] == 0.0) {
                brackets.push_back({0, DiskBranch::Pressure, prev_lambda, lambda});
            }
            if ((jb[1] > 0.0) != (prev_j1b > 0.0) || jb[1] == 0.0) {
                brackets.push_back({0, DiskBranch::Torsional, prev_lambda, lambda});
            }
        }
        prev_j1a = ja[1];
        prev_j1b = jb[1];
        for (int m = 1; m <= m_max; ++m) {
            const auto mi = static_cast<std::size_t>(m);
            const double lower = unit * (m - 1.0) * (m - 1.0);
            if (lambda < lower) continue;
            const double dja = 0.5 * (ja[mi - 1] - ja[mi + 1]);
            const double djb = 0.5 * (jb[mi - 1] - jb[mi + 1]);
            const double d = static_cast<double>(m) * m * ja[mi] * jb[mi] - a * b * dja * djb;
            if (have_prev[mi] && ((d > 0.0) != (prev_d[mi] > 0.0) || d == 0.0)) {
                brackets.push_back({m, DiskBranch::Coupled, prev_lambda, lambda});
            }
            prev_d[mi] = d;
            have_prev[mi] = true;
        }
        prev_lambda = lambda;
    }

    // Refinement, optionally split across threads; results are sorted afterwards.
    std::vector<DiskModeRoot> roots(brackets.size());
    auto refine_range = [&](std::size_t first, std::size_t last) {
        for (std::size_t i = first; i < last; ++i) {
            const Bracket& br = brackets[i];
            DiskModeRoot root;
            root.m = br.m;
            root.branch = br.branch;
            root.multiplicity = br.m == 0 ? 1 : 2;
            if (br.branch == DiskBranch::Pressure) {
                root.lambda = refine_root(
                    [&](double l) { return j1_of(radius * std::sqrt(l / p_speed)); }, br.lo, br.hi,
                    options.root_rel_tol);
            } else if (br.branch == DiskBranch::Torsional) {
                root.lambda = refine_root([&](double l) { return j1_of(radius * std::sqrt(l / tau)); }, br.lo,
                                          br.hi, options.root_rel_tol);
            } else {
                root.lambda = refine_root(
                    [&](double l) { return disk_determinant(params, radius, br.m, l).value; }, br.lo, br.hi,
                    options.root_rel_tol);
            }
            if (br.m == 0) {
                // Residual of the J_1 factor against its envelope sqrt(2 / (pi x)).
                const double speed = br.branch == DiskBranch::Pressure ? p_speed : tau;
                const double x = radius * std::sqrt(root.lambda / speed);
                root.relative_residual = std::abs(j1_of(x)) / std::sqrt(2.0 / (kPi * x));
            } else {
                const auto det = disk_determinant(params, radius, br.m, root.lambda);
                root.relative_residual = det.scale > 0.0 ? std::abs(det.value) / det.scale : 0.0;
            }
            roots[i] = root;
        }
    };
    const int threads = std::max(1, options.threads);
    if (threads == 1 || brackets.size() < 64) {
        refine_range(0, brackets.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (brackets.size() + static_cast<std::size_t>(threads) - 1) /
                                  static_cast<std::size_t>(threads);
        for (std::size_t first = 0; first < brackets.size(); first += chunk) {
            pool.emplace_back(refine_range, first, std::min(brackets.size(), first + chunk));
        }
        for (auto& t : pool) t.join();
    }

    std::sort(roots.begin(), roots.end(), [](const DiskModeRoot& x, const DiskModeRoot& y) {
        if (x.lambda != y.lambda) return x.lambda < y.lambda;
        if (x.m != y.m) return x.m < y.m;
        return static_cast<int>(x.branch) < static_cast<int>(y.branch);
    });
    {
        std::vector<int> counter(static_cast<std::size_t>(m_max) + 1, 0);
        int pressure = 0;
        int torsional = 0;
        for (auto& r : roots) {
            if (r.branch == DiskBranch::Pressure) {
                r.radial_index = ++pressure;
            } else if (r.branch == DiskBranch::Torsional) {
                r.radial_index = ++torsional;
            } else {
                r.radial_index = ++counter[static_cast<std::size_t>(r.m)];
            }
        }
    }

    DiskOracleResult result;
    result.roots = std::move(roots);
    result.m_max = m_max;
    for (const auto& r : result.roots) {
        if (r.lambda <= lambda_max) {
            result.count += static_cast<std::size_t>(r.multiplicity);
            for (int c = 0; c < r.multiplicity; ++c) result.spectrum.eigenvalues.push_back(r.lambda);
        }
    }
    const double area = kPi * radius * radius;
    result.weyl_expected =
        weyl_count_prediction(params, 2, area, lambda_max) +
        weyl_boundary_correction(params, 2, 2.0 * kPi * radius, lambda_max, BoundaryCondition::Dirichlet);
    result.weyl_band = disk_weyl_band(params, radius, lambda_max);

    result.spectrum.dim = 2;
    result.spectrum.bc = BoundaryCondition::Dirichlet;
    result.spectrum.params = params;
    result.spectrum.provenance = AnalyticDiskProvenance{radius, m_max, lambda_max};
    result.spectrum.domain_meta = Domain{Disk{radius}};

    if (options.audit && std::abs(static_cast<double>(result.count) - result.weyl_expected) > result.weyl_band) {
        throw Error(ErrorKind::IncompleteSpectrum,
                    "disk oracle found " + std::to_string(result.count) + " eigenvalues below " +
                        std::to_string(lambda_max) + " but the Weyl count expects " +
                        std::to_string(result.weyl_expected) + " +- " + std::to_string(result.weyl_band),
                    m_max < m_bound ? "raise m_max to at least " + std::to_string(m_bound)
                                    : "reduce the scan step");
    }
    return result;
}

Spectrum disk_dirichlet_spectrum(const LameParameters& params, double radius, int m_max, double lambda_max) {
    DiskOracleOptions options;
    options.m_max = m_max;
    return disk_dirichlet_roots(params, radius, lambda_max, options).spectrum;
}

}  // namespace lamespec
