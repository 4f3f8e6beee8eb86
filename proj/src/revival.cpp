#include "bhdyn/revival.hpp"

#include <cmath>

namespace bhdyn {

namespace {
constexpr cplx I{0.0, 1.0};

double friction_coeff(const RevivalParams& p) {
    return p.variant == RevivalParams::Variant::Symmetrized ? 1.0 : 2.0;
}

// Coefficient of the -i * n12 * q interaction term.
double interaction_coeff(double t, const RevivalParams& p) {
    if (p.variant == RevivalParams::Variant::Symmetrized)
        return p.u * (1.0 + std::cos(2.0 * p.u_tilde * t));
    return 2.0 * p.u * std::cos(2.0 * p.u_tilde * t);
}
}  // namespace

void RevivalParams::validate() const {
    if (n_total < 2) throw std::invalid_argument("RevivalParams: n_total must be >= 2");
    if (u_tilde < 0.0) throw std::invalid_argument("RevivalParams: u_tilde must be >= 0");
    if (!std::isfinite(eps) || !std::isfinite(u) || !std::isfinite(u_tilde))
        throw std::invalid_argument("RevivalParams: parameters not finite");
}

void revival_rhs(double t, double n12, cplx q, const RevivalParams& p, double& dn12,
                 cplx& dq) {
    dn12 = -4.0 * p.eps * q.imag();
    dq = I * p.eps * n12 - I * interaction_coeff(t, p) * n12 * q -
         friction_coeff(p) * p.u * p.n_total * std::sin(2.0 * p.u_tilde * t) * q;
}

double revival_collapse_factor(double t, const RevivalParams& p) {
    if (p.u_tilde == 0.0) return 1.0;
    const double c = friction_coeff(p);
    return std::exp(-c * p.u * p.n_total * (1.0 - std::cos(2.0 * p.u_tilde * t)) /
                    (2.0 * p.u_tilde));
}

TrajectorySeries integrate_revival(const RevivalParams& p, const TimeGrid& grid) {
    p.validate();
    grid.validate();
    const double N = p.n_total;
    const size_t npts = grid.size();
    const double dt = grid.dt;

    // Substituted system with q = E(t) y; E' = -c u N sin(2 u~ t) E cancels
    // the friction term exactly:
    //   n12' = -4 eps Im(E y)
    //   y'   =  i eps n12 / E - i a(t) n12 y
    auto rhs = [&p](double t, double n12, cplx y, double& dn, cplx& dy) {
        const double E = revival_collapse_factor(t, p);
        dn = -4.0 * p.eps * (E * y).imag();
        dy = I * p.eps * n12 / E - I * interaction_coeff(t, p) * n12 * y;
    };

    TrajectorySeries out;
    out.times.resize(npts);
    std::vector<double> n12c(npts), q_re(npts), q_im(npts), nrm(npts);

    double n12 = N;
    cplx y = 0.0;
    auto record = [&](size_t k) {
        const double t = grid.time(k);
        out.times[k] = t;
        const cplx q = revival_collapse_factor(t, p) * y;
        if (!std::isfinite(q.real()) || std::abs(q) > 10.0 * N || std::abs(n12) > 10.0 * N)
            throw std::runtime_error("integrate_revival: solution blew up at t=" +
                                     std::to_string(t) + "; reduce dt");
        n12c[k] = n12 / N;
        q_re[k] = q.real();
        q_im[k] = q.imag();
        nrm[k] = (n12 * n12 + 4.0 * std::norm(q)) / (N * N);
    };

    record(0);
    for (size_t k = 1; k < npts; ++k) {
        const double t = grid.time(k - 1);
        double dn1, dn2, dn3, dn4;
        cplx dy1, dy2, dy3, dy4;
        rhs(t, n12, y, dn1, dy1);
        rhs(t + 0.5 * dt, n12 + 0.5 * dt * dn1, y + 0.5 * dt * dy1, dn2, dy2);
        rhs(t + 0.5 * dt, n12 + 0.5 * dt * dn2, y + 0.5 * dt * dy2, dn3, dy3);
        rhs(t + dt, n12 + dt * dn3, y + dt * dy3, dn4, dy4);
        n12 += dt / 6.0 * (dn1 + 2.0 * dn2 + 2.0 * dn3 + dn4);
        y += dt / 6.0 * (dy1 + 2.0 * dy2 + 2.0 * dy3 + dy4);
        record(k);
    }

    out.add_column("n12_over_N", std::move(n12c));
    out.add_column("q_re", std::move(q_re));
    out.add_column("q_im", std::move(q_im));
    out.add_column("norm", std::move(nrm));
    return out;
}

double collapse_envelope(int n_total, double u, double t) {
    return std::exp(-0.25 * n_total * (1.0 - std::cos(2.0 * u * t)));
}

double small_g_imbalance(int n_total, double eps, double u, double t) {
    return n_total * std::cos(2.0 * eps * t) * collapse_envelope(n_total, u, t);
}

}  // namespace bhdyn
