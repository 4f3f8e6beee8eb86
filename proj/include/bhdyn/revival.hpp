#pragma once

#include "bhdyn/model.hpp"

namespace bhdyn {

// Closed ODE system for the two-site imbalance n12 = <n1-n2> and the
// hopping correlator q = <a1+ a2> at finite interaction, derived by
// factorizing three-point correlators with explicit interaction phases
// e^{-+ i 2 u t}.  Raw form (symmetrized averaging of the two phases):
//
//   n12' = -4 eps Im q
//   q'   = i eps n12 - i u (1 + cos 2 u~ t) n12 q - u N sin(2 u~ t) q
//
// u~ = 0 freezes the phases (pendulum limit, u still scales the coupling);
// u~ = u is the physical choice.  The friction term makes the raw system
// stiff over a revival period, so the integrator substitutes q = E(t) y with
//   E(t) = exp{ -c u N (1 - cos 2 u~ t) / (2 u~) },
// which removes it exactly.  The PurePhase variant keeps one phase factor
// per site instead of the symmetric average (c = 2 instead of c = 1,
// interaction term 2 cos instead of 1 + cos).
struct RevivalParams {
    double eps = 0.0;
    double u = 0.0;
    double u_tilde = 0.0;
    int n_total = 0;

    enum class Variant { Symmetrized, PurePhase };
    Variant variant = Variant::Symmetrized;

    void validate() const;
};

// Raw right-hand side (no stabilizing substitution); used by tests to pin
// the equations and by the integrator's consistency checks.
void revival_rhs(double t, double n12, cplx q, const RevivalParams& p, double& dn12, cplx& dq);

// Collapse factor split off by the substitution; E(0) = 1, and E == 1 when
// u_tilde == 0.
double revival_collapse_factor(double t, const RevivalParams& p);

// RK4 on (n12, y) from n12(0) = N, q(0) = 0.
// Columns: n12_over_N, q_re, q_im, norm (|q reconstructed| guard value).
TrajectorySeries integrate_revival(const RevivalParams& p, const TimeGrid& grid);

// Gaussian-like envelope exp{-(N/4)(1 - cos 2ut)} of the collapse, and the
// small-g closed form n12(t) ~ N cos(2 eps t) * envelope.
double collapse_envelope(int n_total, double u, double t);
double small_g_imbalance(int n_total, double eps, double u, double t);

}  // namespace bhdyn
