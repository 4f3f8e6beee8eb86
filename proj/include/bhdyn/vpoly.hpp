#pragma once

#include <Eigen/Dense>
#include <map>

#include "bhdyn/model.hpp"

namespace bhdyn {

// Sparse polynomial in the commuting variables v_1..v_n, vb_1..vb_n
// (vb_j are independent symbols standing for the conjugates).  The exponent
// key is (e_v1..e_vn, e_vb1..e_vbn).
class VPolynomial {
public:
    using Key = std::vector<int>;

    explicit VPolynomial(int nsites) : nsites_(nsites) {
        if (nsites <= 0) throw std::invalid_argument("VPolynomial: nsites must be positive");
    }

    static VPolynomial constant(int nsites, cplx c);
    static VPolynomial var_v(int nsites, int j);
    static VPolynomial var_vb(int nsites, int j);
    static VPolynomial radius2(int nsites);  // sum_j v_j vb_j

    int nsites() const { return nsites_; }
    void add_term(const Key& key, cplx coeff);
    cplx coefficient(const Key& key) const;

    VPolynomial operator+(const VPolynomial& o) const;
    VPolynomial operator-(const VPolynomial& o) const;
    VPolynomial operator*(const VPolynomial& o) const;
    VPolynomial operator*(cplx c) const;
    VPolynomial pow(int k) const;

    // Partial derivatives with respect to v_j / vb_j.
    VPolynomial dv(int j) const;
    VPolynomial dvb(int j) const;

    double max_abs_coeff() const;
    const std::map<Key, cplx>& terms() const { return terms_; }

private:
    int nsites_;
    std::map<Key, cplx> terms_;
};

// First-order rotation generator: L0 f = sum_ij eps_ij (v_i df/dv_j - vb_i df/dvb_j).
VPolynomial apply_L0(const VPolynomial& f, const std::vector<double>& eps);
// Second-order interaction: Lint f = u sum_j (v_j^2 d2f/dv_j^2 - vb_j^2 d2f/dvb_j^2).
VPolynomial apply_Lint(const VPolynomial& f, double u);
// Drift generated by the density change P = (v vb)^m, given as the polynomial
// numerator of LP f = 2 u (P'/P) sum_j v_j vb_j (v_j df/dv_j - vb_j df/dvb_j);
// with P'/P = m/(v vb), the numerator below already includes the cancelled
// radius factor: LP f = 2 u m / (v vb) * sum_j v_j vb_j (v_j f_vj - vb_j f_vbj).
VPolynomial apply_LP_numerator(const VPolynomial& f, double u, int m);

// Relative coefficient discrepancy of the change-of-density identity
//   (L0 + Lint)(P f) = P (L0 + Lint + LP) f,   P = (v vb)^m,
// after clearing the single 1/(v vb) in LP.  Zero (to roundoff) iff the
// identity holds for this f.
double girsanov_identity_residual(const VPolynomial& f, int m, const std::vector<double>& eps,
                                  double u);

// ---- Two-site rotation layer on the quadratic observables ----
// Basis order (n1, n2, q, qb) with n_j = v_j vb_j, q = v_1 vb_2, qb = v_2 vb_1.
// R(t) = exp(-t A) with generator A = -i eps [[0, s], [s, 0]], s = [[1,-1],[-1,1]];
// rows of R(t): see rotation tests.
Eigen::Matrix4cd rotation_generator(double eps);
Eigen::Matrix4cd rotation_Rt(double eps, double t);

// One point of the quadratic observable vector.
struct QuadPoint {
    cplx n1, n2, q, qb;
};
QuadPoint apply_rotation(const Eigen::Matrix4cd& R, const QuadPoint& x);

// Interaction flow on monomials G(n1, n2) q^b qb^bb weighted by a density
// P(n1 + n2): scales n1 -> e^{-i2ut(b-bb)} n1, n2 -> e^{+i2ut(b-bb)} n2 and
// multiplies by P(n1' + n2')/P(n1 + n2).
struct DensityMode {
    enum class Kind { Coherent, Number };
    Kind kind = Kind::Coherent;
    int n_total = 0;  // Number: P(x) = x^(N-1)

    static DensityMode coherent() { return {Kind::Coherent, 0}; }
    static DensityMode number(int n_total);
};

struct InteractionAction {
    cplx n1, n2;      // rotated density arguments
    cplx multiplier;  // P ratio
};
InteractionAction apply_interaction_flow(const QuadPoint& x, int b, int bb, double u, double t,
                                         const DensityMode& mode);

// Exact factorization phase of <n_site q> / (<n_site> <q>) under the
// interaction flow: e^{-i2ut} on site 1, e^{+i2ut} on site 2.
cplx factorization_ratio(int site, double u, double t);

}  // namespace bhdyn
