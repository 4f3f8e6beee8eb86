#pragma once

#include <functional>

#include "bhdyn/model.hpp"

namespace bhdyn {

// Regulated oscillatory quadrature for integrals against the pure-phase
// Gaussian kernels e^{+-i phi^2/2} dphi / sqrt(+-2 pi i).  The kernel is not
// absolutely integrable, so each integral is computed with a damping factor
// e^{-eps phi^2/2} at a ladder of regulator strengths {eps0, eps0/2, ...}
// and Richardson-extrapolated to eps -> 0.  The cutoff radius grows as the
// regulator shrinks (eps R^2 / 2 = tail_exponent) and the Simpson step
// shrinks with the local oscillation frequency (step * R = step_scale), so
// refining the ladder automatically refines both.
struct FresnelQuadOptions {
    double epsilon0 = 0.01;      // coarsest regulator
    int levels = 4;              // ladder length; extrapolation order levels-1
    double tail_exponent = 36.0; // e^{-tail_exponent} truncation mass
    double step_scale = 0.05;    // Simpson step * cutoff radius
    double max_step = 0.01;

    void validate() const;
};

struct QuadResult {
    cplx value;
    double error_estimate;  // difference of the two highest-order extrapolants

    // Throws when the internal estimate exceeds `tol`; keeps non-convergence
    // from passing silently.
    const QuadResult& require(double tol) const;
};

// integral of f(phi) e^{sign * i phi^2/2} dphi / sqrt(sign * 2 pi i), f bounded.
QuadResult fresnel_oscillatory_integral(const std::function<cplx(double)>& f, int sign,
                                        const FresnelQuadOptions& opt = {});

// The linear-phase point evaluation: f = e^{-i lambda phi}.  Exact value is
// e^{-sign * i lambda^2 / 2}.  Complex lambda is handled by shifting the
// contour through the stationary point, which keeps the integrand bounded.
QuadResult fresnel_linear_phase(cplx lambda, int sign, const FresnelQuadOptions& opt = {});

// Single-mode interaction step: quadrature representation of the phase
// picked up by z^n over one Trotter slice dt,
//   integral (e^{i u dt} e^{-i sqrt(2 u dt) phi})^n dF(phi)  =  e^{i u dt n(1-n)}.
QuadResult interaction_step_phase(int n, double u, double dt,
                                  const FresnelQuadOptions& opt = {});
cplx interaction_step_phase_exact(int n, double u, double dt);

// m-th moment of the forward/backward weight ratio over one Trotter slice.
// The two-field integrand separates exactly into a product of independent
// phi and theta factors, so the nominally 2D tensor-product quadrature
// collapses to the product of two 1D integrals; the exact value is 1 for
// every m (the ratio is a martingale).
QuadResult weight_ratio_moment(int m, double u, double dt,
                               const FresnelQuadOptions& opt = {});

// Free propagation kernel q_t(x,y) = e^{i(x-y)^2/(2t)} / sqrt(2 pi i t).
cplx free_kernel(double t, double x, double y);

// Ratio of integral q_t(x,y) q_s(y,z) dy to q_{t+s}(x,z); exact value 1.
QuadResult kernel_semigroup_ratio(double t, double s, double x, double z,
                                  const FresnelQuadOptions& opt = {});

}  // namespace bhdyn
