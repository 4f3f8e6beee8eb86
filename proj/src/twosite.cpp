#include "bhdyn/twosite.hpp"

#include <cmath>

namespace bhdyn {

Regime classify_regime(double eps, double g, double tol) {
    const double gap = g * g - 4.0 * eps * eps;
    if (std::abs(gap) <= tol) return Regime::Critical;
    return gap > 0.0 ? Regime::SelfTrapped : Regime::Oscillatory;
}

double pendulum_energy(const PendulumState& s, double eps) {
    return 0.5 * s.phi_dot * s.phi_dot - 4.0 * eps * eps * std::cos(s.phi);
}

double well_energy(const WellState& s, double eps, double g) {
    return 0.5 * s.r_dot * s.r_dot + (2.0 * eps * eps - g * g) * s.r * s.r +
           0.5 * g * g * s.r * s.r * s.r * s.r;
}

double rho1_from_pendulum(double phi_dot, double g) {
    if (g == 0.0)
        throw std::invalid_argument("rho1_from_pendulum: undefined at g = 0");
    return 0.5 * (1.0 + phi_dot / (2.0 * g));
}

namespace {

// Generic 2nd order RK4 on (x, v) with v' = acc(x).
template <typename Acc, typename Rec>
void rk4_second_order(double x, double v, const TimeGrid& grid, Acc&& acc, Rec&& record) {
    const double dt = grid.dt;
    record(0, x, v);
    for (size_t k = 1; k < grid.size(); ++k) {
        const double k1x = v, k1v = acc(x);
        const double k2x = v + 0.5 * dt * k1v, k2v = acc(x + 0.5 * dt * k1x);
        const double k3x = v + 0.5 * dt * k2v, k3v = acc(x + 0.5 * dt * k2x);
        const double k4x = v + dt * k3v, k4v = acc(x + dt * k3x);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        record(k, x, v);
    }
}

}  // namespace

TrajectorySeries integrate_pendulum(double eps, double g, const TimeGrid& grid) {
    grid.validate();
    if (g == 0.0) throw std::invalid_argument("integrate_pendulum: g must be nonzero");
    const size_t npts = grid.size();
    TrajectorySeries out;
    out.times.resize(npts);
    std::vector<double> rho1(npts), n12(npts), phi(npts), phid(npts), nrm(npts, 1.0);

    rk4_second_order(0.0, 2.0 * g, grid,
                     [eps](double x) { return -4.0 * eps * eps * std::sin(x); },
                     [&](size_t k, double x, double v) {
                         out.times[k] = grid.time(k);
                         phi[k] = x;
                         phid[k] = v;
                         rho1[k] = rho1_from_pendulum(v, g);
                         n12[k] = v / (2.0 * g);
                     });

    out.add_column("rho1", std::move(rho1));
    out.add_column("n12_over_N", std::move(n12));
    out.add_column("phi", std::move(phi));
    out.add_column("phi_dot", std::move(phid));
    out.add_column("norm", std::move(nrm));
    return out;
}

TrajectorySeries integrate_double_well(double eps, double g, const TimeGrid& grid) {
    grid.validate();
    const size_t npts = grid.size();
    TrajectorySeries out;
    out.times.resize(npts);
    std::vector<double> rho1(npts), n12(npts), rdot(npts), nrm(npts, 1.0);

    const double lin = 4.0 * eps * eps - 2.0 * g * g;
    const double cub = 2.0 * g * g;
    rk4_second_order(1.0, 0.0, grid,
                     [lin, cub](double x) { return -lin * x - cub * x * x * x; },
                     [&](size_t k, double x, double v) {
                         out.times[k] = grid.time(k);
                         n12[k] = x;
                         rdot[k] = v;
                         rho1[k] = 0.5 * (1.0 + x);
                     });

    out.add_column("rho1", std::move(rho1));
    out.add_column("n12_over_N", std::move(n12));
    out.add_column("r_dot", std::move(rdot));
    out.add_column("norm", std::move(nrm));
    return out;
}

}  // namespace bhdyn
