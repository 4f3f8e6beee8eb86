#include "bhdyn/fresnel.hpp"

#include <cmath>
#include <numbers>

namespace bhdyn {

namespace {
constexpr cplx I{0.0, 1.0};

// sqrt(sign * 2 pi i) with the principal branch: sqrt(2 pi) e^{+-i pi/4}.
cplx kernel_normalizer(int sign) {
    return std::sqrt(2.0 * std::numbers::pi) * std::polar(1.0, sign * std::numbers::pi / 4.0);
}

// Composite Simpson of f(phi) e^{(sign*i - eps) phi^2 / 2} over [-R, R].
cplx simpson_level(const std::function<cplx(double)>& f, int sign, double eps, double R,
                   double step) {
    size_t n = static_cast<size_t>(std::ceil(2.0 * R / step));
    if (n % 2) ++n;
    const double h = 2.0 * R / static_cast<double>(n);
    const cplx a = cplx(-eps, static_cast<double>(sign)) * 0.5;

    auto g = [&](double phi) { return f(phi) * std::exp(a * phi * phi); };

    cplx acc = g(-R) + g(R);
    for (size_t k = 1; k < n; ++k) {
        const double phi = -R + h * static_cast<double>(k);
        acc += (k % 2 ? 4.0 : 2.0) * g(phi);
    }
    return acc * (h / 3.0);
}

// Neville extrapolation of I(eps) to eps = 0 from the ladder samples.
cplx neville_zero(const std::vector<double>& eps, std::vector<cplx> val) {
    const size_t n = eps.size();
    for (size_t level = 1; level < n; ++level)
        for (size_t i = 0; i + level < n; ++i)
            val[i] = (eps[i] * val[i + 1] - eps[i + level] * val[i]) /
                     (eps[i] - eps[i + level]);
    return val[0];
}

QuadResult extrapolated_quad(const std::function<cplx(double)>& f, int sign,
                             const FresnelQuadOptions& opt) {
    opt.validate();
    std::vector<double> eps(opt.levels);
    std::vector<cplx> val(opt.levels);
    for (int l = 0; l < opt.levels; ++l) {
        eps[l] = opt.epsilon0 / std::pow(2.0, l);
        const double R = std::sqrt(2.0 * opt.tail_exponent / eps[l]);
        const double step = std::min(opt.max_step, opt.step_scale / R);
        val[l] = simpson_level(f, sign, eps[l], R, step);
    }
    const cplx full = neville_zero(eps, val);
    const cplx drop =
        neville_zero({eps.begin() + 1, eps.end()}, {val.begin() + 1, val.end()});
    QuadResult r;
    r.value = full / kernel_normalizer(sign);
    r.error_estimate = std::abs(full - drop) / std::abs(kernel_normalizer(sign));
    return r;
}

}  // namespace

void FresnelQuadOptions::validate() const {
    if (!(epsilon0 > 0.0) || levels < 2 || !(tail_exponent > 1.0) || !(step_scale > 0.0) ||
        !(max_step > 0.0))
        throw std::invalid_argument("FresnelQuadOptions: bad quadrature parameters");
}

const QuadResult& QuadResult::require(double tol) const {
    if (!(error_estimate <= tol) || !std::isfinite(value.real()) ||
        !std::isfinite(value.imag()))
        throw std::runtime_error("fresnel quadrature did not converge: estimate " +
                                 std::to_string(error_estimate) + " > tol " +
                                 std::to_string(tol));
    return *this;
}

QuadResult fresnel_oscillatory_integral(const std::function<cplx(double)>& f, int sign,
                                        const FresnelQuadOptions& opt) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("fresnel_oscillatory_integral: sign must be +-1");
    return extrapolated_quad(f, sign, opt);
}

QuadResult fresnel_linear_phase(cplx lambda, int sign, const FresnelQuadOptions& opt) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("fresnel_linear_phase: sign must be +-1");
    // Contour phi = s + i y0 with y0 = sign * Im(lambda): the linear growth of
    // |e^{-i lambda phi}| off the real axis cancels against the kernel, so the
    // shifted integrand has constant magnitude.  The kernel and regulator are
    // both expressed in the real parameter s.
    const double y0 = sign * lambda.imag();
    auto f = [lambda, y0, sign](double s) {
        const cplx phi(s, y0);
        // split e^{sign i phi^2/2} = e^{sign i s^2/2} * rest; `rest` goes here
        const cplx rest =
            std::exp(cplx(0.0, static_cast<double>(sign)) * (2.0 * I * s * y0 - y0 * y0) * 0.5);
        return std::exp(-I * lambda * phi) * rest;
    };
    return extrapolated_quad(f, sign, opt);
}

cplx interaction_step_phase_exact(int n, double u, double dt) {
    return std::exp(I * u * dt * static_cast<double>(n) * (1.0 - static_cast<double>(n)));
}

QuadResult interaction_step_phase(int n, double u, double dt, const FresnelQuadOptions& opt) {
    if (n < 0) throw std::invalid_argument("interaction_step_phase: n must be >= 0");
    if (!(u >= 0.0) || !(dt > 0.0))
        throw std::invalid_argument("interaction_step_phase: need u >= 0, dt > 0");
    const double lam = n * std::sqrt(2.0 * u * dt);
    QuadResult r = fresnel_linear_phase(lam, +1, opt);
    r.value *= std::exp(I * u * dt * static_cast<double>(n));
    return r;
}

QuadResult weight_ratio_moment(int m, double u, double dt, const FresnelQuadOptions& opt) {
    if (m < 0) throw std::invalid_argument("weight_ratio_moment: m must be >= 0");
    if (!(u >= 0.0) || !(dt > 0.0))
        throw std::invalid_argument("weight_ratio_moment: need u >= 0, dt > 0");
    // (e^{-i sqrt(2 u dt)(phi - theta)})^m against dF(phi) dFbar(theta):
    // separable, so the 2D rule is exactly the product of the two 1D rules.
    const double lam = m * std::sqrt(2.0 * u * dt);
    const QuadResult fwd = fresnel_linear_phase(lam, +1, opt);
    const QuadResult bwd = fresnel_linear_phase(-lam, -1, opt);
    QuadResult r;
    r.value = fwd.value * bwd.value;
    r.error_estimate = fwd.error_estimate * std::abs(bwd.value) +
                       bwd.error_estimate * std::abs(fwd.value) +
                       fwd.error_estimate * bwd.error_estimate;
    return r;
}

cplx free_kernel(double t, double x, double y) {
    if (!(t > 0.0)) throw std::invalid_argument("free_kernel: t must be positive");
    const cplx norm = std::sqrt(2.0 * std::numbers::pi * t) *
                      std::polar(1.0, std::numbers::pi / 4.0);
    return std::exp(I * (x - y) * (x - y) / (2.0 * t)) / norm;
}

QuadResult kernel_semigroup_ratio(double t, double s, double x, double z,
                                  const FresnelQuadOptions& opt) {
    if (!(t > 0.0) || !(s > 0.0))
        throw std::invalid_argument("kernel_semigroup_ratio: t, s must be positive");
    // integral q_t(x,y) q_s(y,z) dy: the y-quadratic phase has curvature
    // c = 1/t + 1/s; rescaling y = phi / sqrt(c) maps it onto the standard
    // kernel with a linear phase of slope mu / sqrt(c).
    const double c = 1.0 / t + 1.0 / s;
    const double mu = x / t + z / s;
    const cplx prefactor = std::exp(I * 0.5 * (x * x / t + z * z / s)) /
                           (2.0 * std::numbers::pi * I * std::sqrt(t * s));
    QuadResult q = fresnel_linear_phase(mu / std::sqrt(c), +1, opt);
    const cplx sqrt2pii = std::sqrt(2.0 * std::numbers::pi) *
                          std::polar(1.0, std::numbers::pi / 4.0);
    const cplx value = prefactor * sqrt2pii / std::sqrt(c) * q.value;
    const cplx target = free_kernel(t + s, x, z);
    QuadResult r;
    r.value = value / target;
    r.error_estimate = q.error_estimate * std::abs(prefactor * sqrt2pii / std::sqrt(c)) /
                       std::abs(target);
    return r;
}

}  // namespace bhdyn
