#include "bhdyn/vpoly.hpp"

#include <cmath>

namespace bhdyn {

namespace {
constexpr cplx I{0.0, 1.0};
constexpr double kDrop = 0.0;  // exact coefficient arithmetic; drop true zeros only
}  // namespace

VPolynomial VPolynomial::constant(int nsites, cplx c) {
    VPolynomial p(nsites);
    p.add_term(Key(2 * nsites, 0), c);
    return p;
}

VPolynomial VPolynomial::var_v(int nsites, int j) {
    VPolynomial p(nsites);
    Key k(2 * nsites, 0);
    k[j] = 1;
    p.add_term(k, 1.0);
    return p;
}

VPolynomial VPolynomial::var_vb(int nsites, int j) {
    VPolynomial p(nsites);
    Key k(2 * nsites, 0);
    k[nsites + j] = 1;
    p.add_term(k, 1.0);
    return p;
}

VPolynomial VPolynomial::radius2(int nsites) {
    VPolynomial p(nsites);
    for (int j = 0; j < nsites; ++j) {
        Key k(2 * nsites, 0);
        k[j] = 1;
        k[nsites + j] = 1;
        p.add_term(k, 1.0);
    }
    return p;
}

void VPolynomial::add_term(const Key& key, cplx coeff) {
    if (key.size() != static_cast<size_t>(2 * nsites_))
        throw std::invalid_argument("VPolynomial: key size mismatch");
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (coeff != 0.0) terms_.emplace(key, coeff);
    } else {
        it->second += coeff;
        if (std::abs(it->second) <= kDrop) terms_.erase(it);
    }
}

cplx VPolynomial::coefficient(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

VPolynomial VPolynomial::operator+(const VPolynomial& o) const {
    VPolynomial r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
}

VPolynomial VPolynomial::operator-(const VPolynomial& o) const {
    VPolynomial r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
    return r;
}

VPolynomial VPolynomial::operator*(const VPolynomial& o) const {
    if (nsites_ != o.nsites_) throw std::invalid_argument("VPolynomial: nsites mismatch");
    VPolynomial r(nsites_);
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            Key k(ka.size());
            for (size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
            r.add_term(k, ca * cb);
        }
    }
    return r;
}

VPolynomial VPolynomial::operator*(cplx c) const {
    VPolynomial r(nsites_);
    if (c == 0.0) return r;
    for (const auto& [k, v] : terms_) r.add_term(k, v * c);
    return r;
}

VPolynomial VPolynomial::pow(int n) const {
    if (n < 0) throw std::invalid_argument("VPolynomial::pow: negative power");
    VPolynomial r = constant(nsites_, 1.0);
    for (int i = 0; i < n; ++i) r = r * (*this);
    return r;
}

VPolynomial VPolynomial::dv(int j) const {
    VPolynomial r(nsites_);
    for (const auto& [k, c] : terms_) {
        if (k[j] == 0) continue;
        Key kk = k;
        kk[j] -= 1;
        r.add_term(kk, c * static_cast<double>(k[j]));
    }
    return r;
}

VPolynomial VPolynomial::dvb(int j) const {
    VPolynomial r(nsites_);
    for (const auto& [k, c] : terms_) {
        if (k[nsites_ + j] == 0) continue;
        Key kk = k;
        kk[nsites_ + j] -= 1;
        r.add_term(kk, c * static_cast<double>(k[nsites_ + j]));
    }
    return r;
}

double VPolynomial::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

VPolynomial apply_L0(const VPolynomial& f, const std::vector<double>& eps) {
    const int n = f.nsites();
    if (eps.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("apply_L0: eps must be nsites x nsites");
    VPolynomial r(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double e = eps[static_cast<size_t>(i) * n + j];
            if (e == 0.0) continue;
            r = r + (VPolynomial::var_v(n, i) * f.dv(j)) * e;
            r = r - (VPolynomial::var_vb(n, i) * f.dvb(j)) * e;
        }
    }
    return r;
}

VPolynomial apply_Lint(const VPolynomial& f, double u) {
    const int n = f.nsites();
    VPolynomial r(n);
    for (int j = 0; j < n; ++j) {
        const VPolynomial v2 = VPolynomial::var_v(n, j).pow(2);
        const VPolynomial vb2 = VPolynomial::var_vb(n, j).pow(2);
        r = r + (v2 * f.dv(j).dv(j)) * u;
        r = r - (vb2 * f.dvb(j).dvb(j)) * u;
    }
    return r;
}

VPolynomial apply_LP_numerator(const VPolynomial& f, double u, int m) {
    const int n = f.nsites();
    VPolynomial r(n);
    for (int j = 0; j < n; ++j) {
        const VPolynomial vj = VPolynomial::var_v(n, j);
        const VPolynomial vbj = VPolynomial::var_vb(n, j);
        r = r + (vj * vbj) * (vj * f.dv(j) - vbj * f.dvb(j));
    }
    return r * (2.0 * u * m);
}

double girsanov_identity_residual(const VPolynomial& f, int m, const std::vector<double>& eps,
                                  double u) {
    if (m < 1) throw std::invalid_argument("girsanov_identity_residual: m must be >= 1");
    const int n = f.nsites();
    const VPolynomial P = VPolynomial::radius2(n).pow(m);
    const VPolynomial Pm1 = VPolynomial::radius2(n).pow(m - 1);

    const VPolynomial lhs = apply_L0(P * f, eps) + apply_Lint(P * f, u);
    const VPolynomial rhs =
        P * (apply_L0(f, eps) + apply_Lint(f, u)) + Pm1 * apply_LP_numerator(f, u, m);

    const VPolynomial diff = lhs - rhs;
    const double scale = std::max({lhs.max_abs_coeff(), rhs.max_abs_coeff(), 1.0});
    return diff.max_abs_coeff() / scale;
}

Eigen::Matrix4cd rotation_generator(double eps) {
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
    // block structure -i eps [[0, s], [s, 0]] with s = [[1,-1],[-1,1]];
    // the i makes the nonzero eigenvalues +-2i eps, hence bounded rotation
    const cplx m = -I * eps;
    a(0, 2) = m;  a(0, 3) = -m;
    a(1, 2) = -m; a(1, 3) = m;
    a(2, 0) = m;  a(2, 1) = -m;
    a(3, 0) = -m; a(3, 1) = m;
    return a;
}

Eigen::Matrix4cd rotation_Rt(double eps, double t) {
    const double c2 = std::cos(eps * t) * std::cos(eps * t);
    const double s2 = std::sin(eps * t) * std::sin(eps * t);
    const cplx isc = I * std::sin(eps * t) * std::cos(eps * t);
    Eigen::Matrix4cd r;
    r << c2, s2, isc, -isc,
         s2, c2, -isc, isc,
         isc, -isc, c2, s2,
         -isc, isc, s2, c2;
    return r;
}

QuadPoint apply_rotation(const Eigen::Matrix4cd& R, const QuadPoint& x) {
    Eigen::Vector4cd v;
    v << x.n1, x.n2, x.q, x.qb;
    Eigen::Vector4cd w = R * v;
    return {w[0], w[1], w[2], w[3]};
}

DensityMode DensityMode::number(int n_total) {
    if (n_total < 1) throw std::invalid_argument("DensityMode::number: n_total must be >= 1");
    return {Kind::Number, n_total};
}

InteractionAction apply_interaction_flow(const QuadPoint& x, int b, int bb, double u, double t,
                                         const DensityMode& mode) {
    if (b < 0 || bb < 0)
        throw std::invalid_argument("apply_interaction_flow: negative exponents");
    const cplx ph = std::exp(-2.0 * I * u * t * static_cast<double>(b - bb));
    InteractionAction act;
    act.n1 = ph * x.n1;
    act.n2 = x.n2 / ph;
    const cplx s_old = x.n1 + x.n2;
    const cplx s_new = act.n1 + act.n2;
    if (mode.kind == DensityMode::Kind::Coherent) {
        act.multiplier = std::exp(s_new - s_old);
    } else {
        if (s_old == cplx(0.0))
            throw std::domain_error("apply_interaction_flow: density ratio undefined at n1+n2=0");
        act.multiplier = std::pow(s_new / s_old, mode.n_total - 1);
    }
    return act;
}

cplx factorization_ratio(int site, double u, double t) {
    if (site != 1 && site != 2)
        throw std::invalid_argument("factorization_ratio: site must be 1 or 2");
    return std::exp((site == 1 ? -2.0 : 2.0) * I * u * t);
}

}  // namespace bhdyn
