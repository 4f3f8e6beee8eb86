#include "bhdyn/model.hpp"

#include <cmath>

namespace bhdyn {

ModelParams ModelParams::two_site(double eps, double u) {
    ModelParams p;
    p.sites = 2;
    p.hopping = {0.0, eps, eps, 0.0};
    p.interaction_u = u;
    p.validate();
    return p;
}

ModelParams ModelParams::two_site_g(double eps, double g, int n_total) {
    if (n_total <= 0) throw std::invalid_argument("two_site_g: n_total must be positive");
    ModelParams p = two_site(eps, g / n_total);
    p.g = g;
    p.n_total = n_total;
    return p;
}

ModelParams ModelParams::single_site(double eps, double u) {
    ModelParams p;
    p.sites = 1;
    p.hopping = {eps};
    p.interaction_u = u;
    p.validate();
    return p;
}

ModelParams ModelParams::general(int sites, std::vector<double> hopping, double u) {
    ModelParams p;
    p.sites = sites;
    p.hopping = std::move(hopping);
    p.interaction_u = u;
    p.validate();
    return p;
}

double ModelParams::coupling_g() const {
    if (g) return *g;
    throw std::logic_error(
        "ModelParams: coupling g = u*N requested but no total number was attached");
}

void ModelParams::validate() const {
    if (sites <= 0) throw std::invalid_argument("ModelParams: sites must be positive");
    if (hopping.size() != static_cast<size_t>(sites) * sites)
        throw std::invalid_argument("ModelParams: hopping must be sites x sites");
    for (double h : hopping)
        if (!std::isfinite(h)) throw std::invalid_argument("ModelParams: hopping not finite");
    if (!std::isfinite(interaction_u))
        throw std::invalid_argument("ModelParams: interaction not finite");
    for (int i = 0; i < sites; ++i)
        for (int j = i + 1; j < sites; ++j)
            if (hop(i, j) != hop(j, i))
                throw std::invalid_argument("ModelParams: hopping matrix must be symmetric");
}

InitialState InitialState::coherent(std::vector<cplx> lambda) {
    InitialState s;
    s.kind = Kind::Coherent;
    s.lambda = std::move(lambda);
    s.validate();
    return s;
}

InitialState InitialState::number(std::vector<cplx> lambda, int n_total) {
    InitialState s;
    s.kind = Kind::Number;
    s.lambda = std::move(lambda);
    s.n_total = n_total;
    s.validate();
    return s;
}

double InitialState::total_occupation() const {
    double s = 0.0;
    for (const cplx& l : lambda) s += std::norm(l);
    return s;
}

void InitialState::validate() const {
    if (lambda.empty()) throw std::invalid_argument("InitialState: empty amplitude vector");
    for (const cplx& l : lambda)
        if (!std::isfinite(l.real()) || !std::isfinite(l.imag()))
            throw std::invalid_argument("InitialState: amplitudes not finite");
    if (kind == Kind::Number) {
        if (n_total <= 0)
            throw std::invalid_argument("InitialState: number state needs n_total > 0");
        if (std::abs(total_occupation() - n_total) > 1e-9 * n_total)
            throw std::invalid_argument(
                "InitialState: number state requires sum |lambda_j|^2 = n_total");
    }
}

size_t TimeGrid::steps() const {
    validate();
    return static_cast<size_t>(std::llround(t_max / dt));
}

void TimeGrid::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("TimeGrid: dt must be positive");
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw std::invalid_argument("TimeGrid: t_max must be positive");
    double n = t_max / dt;
    if (std::abs(n - std::llround(n)) > 1e-6)
        throw std::invalid_argument("TimeGrid: t_max must be an integer multiple of dt");
}

void TrajectorySeries::add_column(std::string name, std::vector<double> values) {
    if (values.size() != times.size())
        throw std::invalid_argument("TrajectorySeries: column length mismatch");
    if (has_column(name))
        throw std::invalid_argument("TrajectorySeries: duplicate column " + name);
    cols_.emplace_back(std::move(name), std::move(values));
}

bool TrajectorySeries::has_column(const std::string& name) const {
    for (const auto& [n, v] : cols_)
        if (n == name) return true;
    return false;
}

const std::vector<double>& TrajectorySeries::column(const std::string& name) const {
    for (const auto& [n, v] : cols_)
        if (n == name) return v;
    throw std::out_of_range("TrajectorySeries: no column " + name);
}

double sup_deviation(const TrajectorySeries& a, const TrajectorySeries& b,
                     const std::string& column) {
    const auto& va = a.column(column);
    const auto& vb = b.column(column);
    if (va.size() != vb.size() || a.times.size() != b.times.size())
        throw std::invalid_argument("sup_deviation: series length mismatch");
    double d = 0.0;
    for (size_t k = 0; k < va.size(); ++k) d = std::max(d, std::abs(va[k] - vb[k]));
    return d;
}

}  // namespace bhdyn
