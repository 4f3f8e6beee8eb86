#include "bhdyn/gp.hpp"

#include <cmath>

namespace bhdyn {

namespace {
constexpr cplx I{0.0, 1.0};

void rhs_into(const std::vector<cplx>& w, const ModelParams& p, const DriftMode& mode,
              double g, std::vector<cplx>& out) {
    const int n = p.sites;
    double total = 1.0;
    if (mode.kind == DriftMode::Kind::Number) {
        total = 0.0;
        for (const cplx& wj : w) total += std::norm(wj);
        if (total <= 0.0) throw std::runtime_error("gp_rhs: vanishing norm in number drift");
    }
    for (int j = 0; j < n; ++j) {
        cplx hop = 0.0;
        for (int k = 0; k < n; ++k) hop += p.hop(j, k) * w[k];
        const double drift =
            mode.kind == DriftMode::Kind::Coherent ? std::norm(w[j]) : std::norm(w[j]) / total;
        out[j] = -I * hop - 2.0 * I * g * drift * w[j];
    }
}
}  // namespace

DriftMode DriftMode::number(int n_total) {
    if (n_total < 2) throw std::invalid_argument("DriftMode::number: n_total must be >= 2");
    return {Kind::Number, n_total};
}

std::vector<cplx> gp_rhs(const std::vector<cplx>& w, const ModelParams& params,
                         const DriftMode& mode) {
    params.validate();
    if (w.size() != static_cast<size_t>(params.sites))
        throw std::invalid_argument("gp_rhs: state size must match sites");
    std::vector<cplx> out(w.size());
    rhs_into(w, params, mode, params.coupling_g(), out);
    return out;
}

double gp_norm(const std::vector<cplx>& w) {
    double s = 0.0;
    for (const cplx& wj : w) s += std::norm(wj);
    return s;
}

double gp_energy(const std::vector<cplx>& w, const ModelParams& params) {
    const int n = params.sites;
    const double g = params.coupling_g();
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            e += params.hop(i, j) * (std::conj(w[i]) * w[j]).real();
        e += g * std::norm(w[i]) * std::norm(w[i]);
    }
    return e;
}

TrajectorySeries integrate_gp(const ModelParams& params, const DriftMode& mode,
                              const std::vector<cplx>& w0, const TimeGrid& grid,
                              double norm_abort) {
    params.validate();
    grid.validate();
    if (w0.size() != static_cast<size_t>(params.sites))
        throw std::invalid_argument("integrate_gp: state size must match sites");
    const double g = params.coupling_g();
    const size_t npts = grid.size();
    const double dt = grid.dt;
    const double norm0 = gp_norm(w0);

    TrajectorySeries out;
    out.times.resize(npts);
    std::vector<double> rho1(npts), n12(npts), q_re(npts), q_im(npts), nrm(npts);

    std::vector<cplx> w = w0;
    std::vector<cplx> k1(w.size()), k2(w.size()), k3(w.size()), k4(w.size()), tmp(w.size());

    auto record = [&](size_t k) {
        out.times[k] = grid.time(k);
        rho1[k] = std::norm(w[0]);
        if (params.sites >= 2) {
            n12[k] = std::norm(w[0]) - std::norm(w[1]);
            const cplx q = w[0] * std::conj(w[1]);
            q_re[k] = q.real();
            q_im[k] = q.imag();
        }
        nrm[k] = gp_norm(w);
        if (std::abs(nrm[k] - norm0) > norm_abort)
            throw std::runtime_error("integrate_gp: norm drift " +
                                     std::to_string(std::abs(nrm[k] - norm0)) + " at t=" +
                                     std::to_string(out.times[k]) +
                                     " exceeds the abort threshold; reduce dt");
    };

    record(0);
    for (size_t k = 1; k < npts; ++k) {
        rhs_into(w, params, mode, g, k1);
        for (size_t j = 0; j < w.size(); ++j) tmp[j] = w[j] + 0.5 * dt * k1[j];
        rhs_into(tmp, params, mode, g, k2);
        for (size_t j = 0; j < w.size(); ++j) tmp[j] = w[j] + 0.5 * dt * k2[j];
        rhs_into(tmp, params, mode, g, k3);
        for (size_t j = 0; j < w.size(); ++j) tmp[j] = w[j] + dt * k3[j];
        rhs_into(tmp, params, mode, g, k4);
        for (size_t j = 0; j < w.size(); ++j)
            w[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        record(k);
    }

    out.add_column("rho1", std::move(rho1));
    if (params.sites >= 2) {
        out.add_column("n12_over_N", std::move(n12));
        out.add_column("q_re", std::move(q_re));
        out.add_column("q_im", std::move(q_im));
    }
    out.add_column("norm", std::move(nrm));
    return out;
}

}  // namespace bhdyn
