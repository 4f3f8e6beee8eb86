#include "bhdyn/exact_diag.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace bhdyn {

namespace {
constexpr cplx I{0.0, 1.0};

double gershgorin_radius(const SectorHamiltonian& h) {
    double r = 0.0;
    const int d = h.dim();
    for (int n = 0; n < d; ++n) {
        double row = std::abs(h.diag[n]);
        if (n > 0) row += std::abs(h.offdiag[n - 1]);
        if (n + 1 < d) row += std::abs(h.offdiag[n]);
        r = std::max(r, row);
    }
    return r;
}
}  // namespace

Eigen::VectorXcd SectorHamiltonian::apply(const Eigen::VectorXcd& c) const {
    const int d = dim();
    Eigen::VectorXcd out(d);
    for (int n = 0; n < d; ++n) {
        cplx v = diag[n] * c[n];
        if (n > 0) v += offdiag[n - 1] * c[n - 1];
        if (n + 1 < d) v += offdiag[n] * c[n + 1];
        out[n] = v;
    }
    return out;
}

SectorHamiltonian build_sector_hamiltonian(const ModelParams& params, int n_total) {
    params.validate();
    if (params.sites != 2)
        throw std::invalid_argument("build_sector_hamiltonian: two-site models only");
    if (n_total < 0) throw std::invalid_argument("build_sector_hamiltonian: n_total < 0");
    const double u = params.interaction_u;
    const double eps = params.hop(0, 1);
    SectorHamiltonian h;
    h.n_total = n_total;
    h.diag.resize(n_total + 1);
    h.offdiag.resize(std::max(n_total, 0));
    for (int n = 0; n <= n_total; ++n) {
        const double m = n_total - n;
        h.diag[n] = u * (n * (n - 1.0) + m * (m - 1.0));
        if (n < n_total) h.offdiag[n] = eps * std::sqrt((n + 1.0) * (n_total - n));
    }
    return h;
}

Eigen::VectorXcd number_state_coefficients(const std::vector<cplx>& lambda, int n_total) {
    if (lambda.size() != 2)
        throw std::invalid_argument("number_state_coefficients: two amplitudes expected");
    // c_n = sqrt(binom(N,n)) l1^n l2^(N-n) / N^(N/2); accumulate in logs to
    // stay finite for N in the thousands.
    const double a1 = std::abs(lambda[0]), a2 = std::abs(lambda[1]);
    const double ph1 = std::arg(lambda[0]), ph2 = std::arg(lambda[1]);
    const double N = n_total;
    Eigen::VectorXcd c(n_total + 1);
    for (int n = 0; n <= n_total; ++n) {
        const double m = N - n;
        double lg = 0.5 * (std::lgamma(N + 1) - std::lgamma(n + 1.0) - std::lgamma(m + 1.0));
        lg -= 0.5 * N * std::log(N);
        double mag = (a1 > 0 ? n * std::log(a1) : (n ? -1e300 : 0.0)) +
                     (a2 > 0 ? m * std::log(a2) : (m ? -1e300 : 0.0));
        c[n] = std::exp(lg + mag) * std::polar(1.0, n * ph1 + m * ph2);
    }
    return c;
}

SectorPropagator::SectorPropagator(SectorHamiltonian h, int dense_limit) : h_(std::move(h)) {
    dense_ = h_.dim() <= dense_limit;
    if (dense_) {
        Eigen::Map<const Eigen::VectorXd> d(h_.diag.data(), h_.dim());
        Eigen::VectorXd sub(std::max(h_.dim() - 1, 0));
        for (int n = 0; n + 1 < h_.dim(); ++n) sub[n] = h_.offdiag[n];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(d, sub);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("SectorPropagator: eigensolver failed");
        evals_ = es.eigenvalues();
        evecs_ = es.eigenvectors();
    }
}

Eigen::VectorXcd SectorPropagator::at(const Eigen::VectorXcd& c0, double t) const {
    if (dense_) {
        Eigen::VectorXcd a = evecs_.transpose() * c0;
        for (int k = 0; k < a.size(); ++k) a[k] *= std::exp(-I * evals_[k] * t);
        return evecs_ * a;
    }
    Eigen::VectorXcd c = c0;
    // Krylov mode has no random access in t; march in bounded substeps.
    const double rad = std::max(gershgorin_radius(h_), 1e-12);
    const int nsub = std::max(1, static_cast<int>(std::ceil(std::abs(t) * rad / 15.0)));
    const double dt = t / nsub;
    for (int k = 0; k < nsub; ++k) c = krylov_exp(c, dt);
    return c;
}

void SectorPropagator::step(Eigen::VectorXcd& c, double dt) const {
    if (dense_) {
        c = at(c, dt);
        return;
    }
    const double rad = std::max(gershgorin_radius(h_), 1e-12);
    const int nsub = std::max(1, static_cast<int>(std::ceil(std::abs(dt) * rad / 15.0)));
    const double h = dt / nsub;
    for (int k = 0; k < nsub; ++k) c = krylov_exp(c, h);
}

// One Lanczos approximation of exp(-i H dt) c; dt is assumed small enough
// that ||H|| dt stays within the Krylov dimension (callers substep).
Eigen::VectorXcd SectorPropagator::krylov_exp(const Eigen::VectorXcd& c, double dt) const {
    const int d = h_.dim();
    const int m = std::min(40, d);
    const double beta0 = c.norm();
    if (beta0 == 0.0) return c;

    Eigen::MatrixXcd V(d, m);
    Eigen::VectorXd alpha(m), beta(m);
    V.col(0) = c / beta0;
    int used = m;
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXcd w = h_.apply(V.col(j));
        if (j > 0) w -= beta[j - 1] * V.col(j - 1);
        alpha[j] = w.dot(V.col(j)).real();
        w -= alpha[j] * V.col(j);
        // one re-orthogonalization pass keeps long chains stable
        for (int k = 0; k <= j; ++k) w -= V.col(k).dot(w) * V.col(k);
        beta[j] = w.norm();
        if (j + 1 < m) {
            if (beta[j] < 1e-13) { used = j + 1; break; }
            V.col(j + 1) = w / beta[j];
        }
    }

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(used, used);
    for (int j = 0; j < used; ++j) {
        T(j, j) = alpha[j];
        if (j + 1 < used) T(j, j + 1) = T(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(used);
    e1[0] = beta0;
    Eigen::VectorXcd y = es.eigenvectors().transpose() * e1;
    for (int k = 0; k < used; ++k) y[k] *= std::exp(-I * es.eigenvalues()[k] * dt);
    y = es.eigenvectors() * y;
    return V.leftCols(used) * y;
}

namespace {

struct TwoSiteObservables {
    std::vector<double> rho1, n12, q_re, q_im, norm;
    void reserve(size_t n) {
        rho1.reserve(n); n12.reserve(n); q_re.reserve(n); q_im.reserve(n); norm.reserve(n);
    }
};

// Accumulate <n1>, <a1+ a2> (textbook ordering) and <c|c> of one sector state.
void accumulate(const Eigen::VectorXcd& c, int n_total, double& n1, cplx& q_tb, double& nrm) {
    for (int n = 0; n <= n_total; ++n) {
        const double p = std::norm(c[n]);
        n1 += n * p;
        nrm += p;
        if (n < n_total)
            q_tb += std::conj(c[n + 1]) * std::sqrt((n + 1.0) * (n_total - n)) * c[n];
    }
}

TrajectorySeries assemble(const TimeGrid& grid, TwoSiteObservables&& obs) {
    TrajectorySeries out;
    out.times.resize(grid.size());
    for (size_t k = 0; k < out.times.size(); ++k) out.times[k] = grid.time(k);
    out.add_column("rho1", std::move(obs.rho1));
    out.add_column("n12_over_N", std::move(obs.n12));
    out.add_column("q_re", std::move(obs.q_re));
    out.add_column("q_im", std::move(obs.q_im));
    out.add_column("norm", std::move(obs.norm));
    return out;
}

// Dense batch evaluation: V * (phases o a) for a chunk of times at once,
// split into two real GEMMs. Falls back to per-step Krylov otherwise.
template <typename F>
void for_each_time(const SectorPropagator& prop, const Eigen::VectorXcd& c0,
                   const TimeGrid& grid, F&& visit) {
    const size_t npts = grid.size();
    if (!prop.dense()) {
        Eigen::VectorXcd c = c0;
        visit(0, c);
        for (size_t k = 1; k < npts; ++k) {
            prop.step(c, grid.dt);
            visit(k, c);
        }
        return;
    }
    const int d = static_cast<int>(c0.size());
    const Eigen::VectorXd& evals = prop.eigenvalues();
    const Eigen::MatrixXd& evecs = prop.eigenvectors();
    Eigen::VectorXcd a = evecs.transpose() * c0;
    constexpr size_t chunk = 512;
    Eigen::MatrixXd Mr(d, chunk), Mi(d, chunk);
    for (size_t k0 = 0; k0 < npts; k0 += chunk) {
        const size_t nc = std::min(chunk, npts - k0);
        for (size_t j = 0; j < nc; ++j) {
            const double t = grid.time(k0 + j);
            for (int n = 0; n < d; ++n) {
                const cplx v = a[n] * std::exp(-I * evals[n] * t);
                Mr(n, static_cast<int>(j)) = v.real();
                Mi(n, static_cast<int>(j)) = v.imag();
            }
        }
        Eigen::MatrixXd Cr = evecs * Mr.leftCols(nc);
        Eigen::MatrixXd Ci = evecs * Mi.leftCols(nc);
        Eigen::VectorXcd c(d);
        for (size_t j = 0; j < nc; ++j) {
            for (int n = 0; n < d; ++n) c[n] = cplx(Cr(n, j), Ci(n, j));
            visit(k0 + j, c);
        }
    }
}

}  // namespace

TrajectorySeries evolve_number_state(const ModelParams& params, const InitialState& state,
                                     const TimeGrid& grid) {
    state.validate();
    grid.validate();
    if (state.kind != InitialState::Kind::Number)
        throw std::invalid_argument("evolve_number_state: number state expected");
    const int N = state.n_total;
    SectorPropagator prop(build_sector_hamiltonian(params, N));
    Eigen::VectorXcd c0 = number_state_coefficients(state.lambda, N);

    TwoSiteObservables obs;
    obs.rho1.resize(grid.size());
    obs.n12.resize(grid.size());
    obs.q_re.resize(grid.size());
    obs.q_im.resize(grid.size());
    obs.norm.resize(grid.size());

    for_each_time(prop, c0, grid, [&](size_t k, const Eigen::VectorXcd& c) {
        double n1 = 0.0, nrm = 0.0;
        cplx q_tb = 0.0;
        accumulate(c, N, n1, q_tb, nrm);
        const cplx q = std::conj(q_tb) / static_cast<double>(N);
        obs.rho1[k] = n1 / N;
        obs.n12[k] = 2.0 * n1 / N - nrm;
        obs.q_re[k] = q.real();
        obs.q_im[k] = q.imag();
        obs.norm[k] = nrm;
    });
    return assemble(grid, std::move(obs));
}

namespace {

// Coherent coefficients within the N-boson sector, including the global
// e^{-|lambda|^2/2} so sector norms are the Poisson weights.
Eigen::VectorXcd coherent_sector_coefficients(const std::vector<cplx>& lambda, int n_total) {
    const double a1 = std::abs(lambda[0]), a2 = std::abs(lambda[1]);
    const double ph1 = std::arg(lambda[0]), ph2 = std::arg(lambda[1]);
    const double tot = std::norm(lambda[0]) + std::norm(lambda[1]);
    Eigen::VectorXcd c(n_total + 1);
    for (int n = 0; n <= n_total; ++n) {
        const int m = n_total - n;
        double lg = -0.5 * tot - 0.5 * (std::lgamma(n + 1.0) + std::lgamma(m + 1.0));
        lg += (a1 > 0 ? n * std::log(a1) : (n ? -1e300 : 0.0)) +
              (a2 > 0 ? m * std::log(a2) : (m ? -1e300 : 0.0));
        c[n] = std::exp(lg) * std::polar(1.0, n * ph1 + m * ph2);
    }
    return c;
}

TrajectorySeries evolve_coherent_single_mode(const ModelParams& params,
                                             const InitialState& state, const TimeGrid& grid) {
    const cplx lam = state.lambda[0];
    const double eps = params.hop(0, 0);
    const double u = params.interaction_u;
    const double nbar = std::norm(lam);
    // Fock cutoff: extend until the Poisson tail is negligible.
    int M = static_cast<int>(nbar + 20.0 * std::sqrt(nbar + 1.0) + 40.0);
    std::vector<cplx> c(M + 1);
    for (int n = 0; n <= M; ++n) {
        double lg = -0.5 * nbar - 0.5 * std::lgamma(n + 1.0) +
                    (nbar > 0 ? 0.5 * n * std::log(nbar) : (n ? -1e300 : 0.0));
        c[n] = std::exp(lg) * std::polar(1.0, n * std::arg(lam));
    }

    TrajectorySeries out;
    out.times.resize(grid.size());
    std::vector<double> a_re(grid.size()), a_im(grid.size()), nn(grid.size()), nrm(grid.size());
    for (size_t k = 0; k < grid.size(); ++k) {
        const double t = grid.time(k);
        out.times[k] = t;
        cplx a_tb = 0.0;
        double en = 0.0, no = 0.0;
        for (int n = 0; n <= M; ++n) {
            const cplx cn = c[n] * std::exp(-I * (eps * n + u * n * (n - 1.0)) * t);
            const double p = std::norm(cn);
            en += n * p;
            no += p;
            if (n < M) {
                const cplx cn1 =
                    c[n + 1] * std::exp(-I * (eps * (n + 1.0) + u * (n + 1.0) * n) * t);
                a_tb += std::conj(cn) * std::sqrt(n + 1.0) * cn1;
            }
        }
        const cplx a_conv = std::conj(a_tb);  // same ordering as the closed form
        a_re[k] = a_conv.real();
        a_im[k] = a_conv.imag();
        nn[k] = nbar > 0 ? en / nbar : en;
        nrm[k] = no;
    }
    out.add_column("a_re", std::move(a_re));
    out.add_column("a_im", std::move(a_im));
    out.add_column("rho1", std::move(nn));
    out.add_column("norm", std::move(nrm));
    return out;
}

}  // namespace

TrajectorySeries evolve_coherent_state(const ModelParams& params, const InitialState& state,
                                       const TimeGrid& grid, double tail_mass) {
    state.validate();
    grid.validate();
    if (state.kind != InitialState::Kind::Coherent)
        throw std::invalid_argument("evolve_coherent_state: coherent state expected");
    if (params.sites == 1) return evolve_coherent_single_mode(params, state, grid);
    if (params.sites != 2)
        throw std::invalid_argument("evolve_coherent_state: one or two sites supported");

    const double nbar = state.total_occupation();
    const int n_hi =
        static_cast<int>(nbar + 12.0 * std::sqrt(nbar + 1.0) + 30.0);
    // Poisson weights; verify the retained mass.
    double mass = 0.0;
    std::vector<double> w(n_hi + 1);
    for (int n = 0; n <= n_hi; ++n) {
        w[n] = std::exp(-nbar + (nbar > 0 ? n * std::log(nbar) : (n ? -1e300 : 0.0)) -
                        std::lgamma(n + 1.0));
        mass += w[n];
    }
    if (1.0 - mass > tail_mass)
        throw std::runtime_error("evolve_coherent_state: sector truncation too aggressive");

    const size_t npts = grid.size();
    std::vector<double> n1(npts, 0.0), nrm(npts, 0.0);
    std::vector<cplx> q_tb(npts, 0.0);

    for (int N = 0; N <= n_hi; ++N) {
        if (w[N] < tail_mass * 1e-3 && N > nbar) break;
        if (w[N] < tail_mass * 1e-3) continue;
        SectorPropagator prop(build_sector_hamiltonian(params, N));
        Eigen::VectorXcd c0 = coherent_sector_coefficients(state.lambda, N);
        for_each_time(prop, c0, grid, [&](size_t k, const Eigen::VectorXcd& c) {
            accumulate(c, N, n1[k], q_tb[k], nrm[k]);
        });
    }

    TwoSiteObservables obs;
    obs.rho1.resize(npts);
    obs.n12.resize(npts);
    obs.q_re.resize(npts);
    obs.q_im.resize(npts);
    obs.norm.resize(npts);
    for (size_t k = 0; k < npts; ++k) {
        const cplx q = std::conj(q_tb[k]) / nbar;
        obs.rho1[k] = n1[k] / nbar;
        obs.n12[k] = 2.0 * n1[k] / nbar - nrm[k];
        obs.q_re[k] = q.real();
        obs.q_im[k] = q.imag();
        obs.norm[k] = nrm[k];
    }
    return assemble(grid, std::move(obs));
}

cplx zero_d_closed_form(cplx lambda, double eps, double u, double t) {
    const cplx phase = std::exp(I * eps * t);
    const cplx blur = std::exp(-(1.0 - std::exp(2.0 * I * u * t)) * std::norm(lambda));
    return std::conj(lambda) * phase * blur;
}

cplx zero_d_truncated_sum(cplx lambda, double eps, double u, double t, int terms) {
    const double nbar = std::norm(lambda);
    // explicit tail bound on the Poisson weights dropped by the truncation
    double tail = 1.0, acc = 0.0, term = std::exp(-nbar);
    for (int n = 0; n < terms; ++n) {
        acc += term;
        term *= nbar / (n + 1.0);
    }
    tail = 1.0 - acc;
    if (tail > 1e-13)
        throw std::invalid_argument("zero_d_truncated_sum: truncation tail above 1e-13");

    cplx s = 0.0;
    double weight = std::exp(-nbar);
    for (int n = 0; n < terms; ++n) {
        s += std::exp(I * (eps + 2.0 * u * n) * t) * weight;
        weight *= nbar / (n + 1.0);
    }
    return std::conj(lambda) * s;
}

}  // namespace bhdyn
