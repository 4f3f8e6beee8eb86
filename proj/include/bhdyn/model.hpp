#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhdyn {

using cplx = std::complex<double>;

// Lattice model data shared by every engine: a real symmetric hopping
// matrix eps (row-major, sites x sites) and an on-site interaction
// strength u (half the usual Hubbard U, so h_int = u * n(n-1) per site).
//
// For mean-field / classical engines the interaction enters through the
// scaled coupling g = u * N.  Since those engines never see N directly,
// the pair (g, n_total) can be attached explicitly; engines that need g
// call coupling_g() and get a clear error when it was never defined.
struct ModelParams {
    int sites = 0;
    std::vector<double> hopping;   // row-major sites*sites, symmetric
    double interaction_u = 0.0;
    std::optional<double> g;       // g = u * n_total when attached
    std::optional<int> n_total;

    static ModelParams two_site(double eps, double u);
    // Two sites, coupling given as (g, n) with u = g / n.
    static ModelParams two_site_g(double eps, double g, int n_total);
    static ModelParams single_site(double eps, double u);
    static ModelParams general(int sites, std::vector<double> hopping, double u);

    double hop(int i, int j) const { return hopping[static_cast<size_t>(i) * sites + j]; }
    double coupling_g() const;
    void validate() const;
};

// Product initial states.  Coherent: unnormalized Bargmann exponential
// with per-site amplitudes lambda_j (mean total occupation sum |lambda_j|^2).
// Number: N bosons distributed with single-particle amplitudes lambda_j,
// constrained to sum |lambda_j|^2 = n_total so the state is normalized.
struct InitialState {
    enum class Kind { Coherent, Number };

    Kind kind = Kind::Coherent;
    std::vector<cplx> lambda;
    int n_total = 0;   // Number states only

    static InitialState coherent(std::vector<cplx> lambda);
    static InitialState number(std::vector<cplx> lambda, int n_total);

    double total_occupation() const;
    void validate() const;
};

struct TimeGrid {
    double t_max = 0.0;
    double dt = 0.0;

    size_t steps() const;                    // number of RK4 steps
    size_t size() const { return steps() + 1; }
    double time(size_t k) const { return static_cast<double>(k) * dt; }
    void validate() const;
};

// Column-oriented result of one engine run.  Column order is the
// insertion order, which keeps CSV output deterministic.  Complex
// observables are stored as paired _re/_im columns.
class TrajectorySeries {
public:
    std::vector<double> times;

    void add_column(std::string name, std::vector<double> values);
    bool has_column(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;
    const std::vector<std::pair<std::string, std::vector<double>>>& columns() const {
        return cols_;
    }

private:
    std::vector<std::pair<std::string, std::vector<double>>> cols_;
};

// Largest pointwise |a - b| over a shared column; series must share the
// same time grid.
double sup_deviation(const TrajectorySeries& a, const TrajectorySeries& b,
                     const std::string& column);

}  // namespace bhdyn
