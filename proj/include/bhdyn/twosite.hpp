#pragma once

#include "bhdyn/model.hpp"

namespace bhdyn {

// Classical reductions of the symmetric two-site condensate with all
// particles initially on site 1.
//
// Pendulum form:     phi'' = -4 eps^2 sin(phi),  phi(0)=0, phi'(0)=2g,
//                    with rho1 = (1 + phi'/(2g)) / 2.
// Imbalance form:    r'' = -(4 eps^2 - 2 g^2) r - 2 g^2 r^3,  r(0)=1, r'(0)=0,
//                    where r = n12/N; the two are related by r = phi'/(2g).

struct PendulumState {
    double phi = 0.0;
    double phi_dot = 0.0;
};

struct WellState {
    double r = 0.0;
    double r_dot = 0.0;
};

enum class Regime { Oscillatory, SelfTrapped, Critical };

// Self-trapping happens when the pendulum energy exceeds the separatrix,
// i.e. g^2 > (2 eps)^2.
Regime classify_regime(double eps, double g, double tol = 1e-12);

double pendulum_energy(const PendulumState& s, double eps);
double well_energy(const WellState& s, double eps, double g);
double rho1_from_pendulum(double phi_dot, double g);

// RK4 integration from the canonical initial conditions above.
// Pendulum series columns: rho1, n12_over_N, phi, phi_dot, norm (==1).
TrajectorySeries integrate_pendulum(double eps, double g, const TimeGrid& grid);
// Imbalance series columns: rho1, n12_over_N, r_dot, norm (==1).
TrajectorySeries integrate_double_well(double eps, double g, const TimeGrid& grid);

}  // namespace bhdyn
