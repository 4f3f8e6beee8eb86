#pragma once

#include <Eigen/Dense>

#include "bhdyn/model.hpp"

namespace bhdyn {

// Two-site Hamiltonian restricted to the N-boson sector, in the Fock basis
// |n, N-n>, n = 0..N.  It is real symmetric tridiagonal:
//   diag[n]    = u * [ n(n-1) + (N-n)(N-n-1) ]
//   offdiag[n] = eps * sqrt( (n+1)(N-n) )     (couples n <-> n+1)
struct SectorHamiltonian {
    int n_total = 0;
    std::vector<double> diag;
    std::vector<double> offdiag;

    int dim() const { return n_total + 1; }
    Eigen::VectorXcd apply(const Eigen::VectorXcd& c) const;
};

SectorHamiltonian build_sector_hamiltonian(const ModelParams& params, int n_total);

// Initial coefficients of the number state (lambda1 a1+ + lambda2 a2+)^N |0>
// normalized to 1, in the |n, N-n> basis.
Eigen::VectorXcd number_state_coefficients(const std::vector<cplx>& lambda, int n_total);

// Propagates c(t) = exp(-i H t) c(0) within one sector.  Small sectors use a
// dense eigendecomposition (exact up to roundoff, evaluated independently at
// each output time); large ones fall back to a stepwise Lanczos/Krylov
// approximation of the matrix exponential.
class SectorPropagator {
public:
    explicit SectorPropagator(SectorHamiltonian h, int dense_limit = 5001);

    // State at time t, computed from the t=0 coefficients.
    Eigen::VectorXcd at(const Eigen::VectorXcd& c0, double t) const;
    // Advance an evolving state by dt in place (cheap path for Krylov mode).
    void step(Eigen::VectorXcd& c, double dt) const;
    bool dense() const { return dense_; }
    const Eigen::VectorXd& eigenvalues() const { return evals_; }
    const Eigen::MatrixXd& eigenvectors() const { return evecs_; }

private:
    Eigen::VectorXcd krylov_exp(const Eigen::VectorXcd& c, double dt) const;

    SectorHamiltonian h_;
    bool dense_ = true;
    Eigen::VectorXd evals_;
    Eigen::MatrixXd evecs_;
};

// Per-time observables of a two-site sector state:
//   rho1        = <n1>/N
//   n12_over_N  = (<n1>-<n2>)/N
//   q_re, q_im  = conj(<a1+ a2>)/N   (ordering convention of the mean-field
//                 engines, so the columns compare directly)
//   norm        = <c|c>
TrajectorySeries evolve_number_state(const ModelParams& params, const InitialState& state,
                                     const TimeGrid& grid);

// Coherent two-site evolution as a Poisson-weighted mixture over number
// sectors; sectors are kept until the tail mass drops below tail_mass.
TrajectorySeries evolve_coherent_state(const ModelParams& params, const InitialState& state,
                                       const TimeGrid& grid, double tail_mass = 1e-12);

// Single-mode (zero-dimensional) coherent expectation <a>(t) in the ordering
// convention (psi_t, a psi_t) = conj(lambda) e^{i eps t} exp{-(1-e^{2iut})|lambda|^2}.
cplx zero_d_closed_form(cplx lambda, double eps, double u, double t);

// Independent check of the same quantity by explicit summation over Fock
// occupation numbers; throws if `terms` leaves a Poisson tail above 1e-13.
cplx zero_d_truncated_sum(cplx lambda, double eps, double u, double t, int terms);

}  // namespace bhdyn
