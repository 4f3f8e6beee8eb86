#pragma once

#include "bhdyn/model.hpp"

namespace bhdyn {

// Drift variants of the discrete nonlinear Schroedinger flow
//   dw_j/dt = -i (eps w)_j - 2ig D_j(w) w_j
// Coherent:  D_j = |w_j|^2
// Number:    D_j = |w_j|^2 / sum_k |w_k|^2   (identical on the unit sphere)
struct DriftMode {
    enum class Kind { Coherent, Number };
    Kind kind = Kind::Coherent;
    int n_total = 0;  // Number only; must be >= 2

    static DriftMode coherent() { return {Kind::Coherent, 0}; }
    static DriftMode number(int n_total);
};

std::vector<cplx> gp_rhs(const std::vector<cplx>& w, const ModelParams& params,
                         const DriftMode& mode);

// Conserved quantities of the coherent flow.
double gp_norm(const std::vector<cplx>& w);
double gp_energy(const std::vector<cplx>& w, const ModelParams& params);

// Fixed-step RK4 integration.  Emits rho1 = |w_1|^2, n12_over_N =
// |w_1|^2 - |w_2|^2, q_re/q_im = w_1 conj(w_2) (two or more sites) and norm.
// No renormalization is applied; a norm drift beyond norm_abort aborts with
// a diagnostic since it signals an inadequate step size.
TrajectorySeries integrate_gp(const ModelParams& params, const DriftMode& mode,
                              const std::vector<cplx>& w0, const TimeGrid& grid,
                              double norm_abort = 1e-6);

}  // namespace bhdyn
