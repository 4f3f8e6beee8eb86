#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bhdyn/twosite.hpp"

using namespace bhdyn;

TEST_CASE("regime classification at the separatrix") {
    CHECK(classify_regime(1.0, 0.5) == Regime::Oscillatory);
    CHECK(classify_regime(1.0, 3.0) == Regime::SelfTrapped);
    CHECK(classify_regime(1.0, 2.0) == Regime::Critical);
    CHECK(classify_regime(0.5, 1.0 + 1e-15) == Regime::Critical);
}

TEST_CASE("pendulum energy is conserved and matches 2g^2 - 4eps^2") {
    const double eps = 1.0, g = 0.5;
    TimeGrid grid{30.0, 1e-3};
    TrajectorySeries s = integrate_pendulum(eps, g, grid);
    const double e0 = 2.0 * g * g - 4.0 * eps * eps;
    const auto& phi = s.column("phi");
    const auto& phid = s.column("phi_dot");
    double worst = 0.0;
    for (size_t k = 0; k < s.times.size(); ++k)
        worst = std::max(worst,
                         std::abs(pendulum_energy({phi[k], phid[k]}, eps) - e0));
    CHECK(worst < 1e-9);
}

TEST_CASE("imbalance energy is conserved and matches (4eps^2 - g^2)/2") {
    const double eps = 0.8, g = 2.5;
    TimeGrid grid{30.0, 1e-3};
    TrajectorySeries s = integrate_double_well(eps, g, grid);
    const double e0 = 0.5 * (4.0 * eps * eps - g * g);
    const auto& r = s.column("n12_over_N");
    const auto& rd = s.column("r_dot");
    double worst = 0.0;
    for (size_t k = 0; k < s.times.size(); ++k)
        worst = std::max(worst, std::abs(well_energy({r[k], rd[k]}, eps, g) - e0));
    CHECK(worst < 1e-9);
}

TEST_CASE("the two reductions are the same motion: n12 = phi_dot / 2g") {
    for (double g : {0.5, 1.5, 1.999, 2.001, 3.0}) {
        TimeGrid grid{20.0, 5e-4};
        TrajectorySeries pen = integrate_pendulum(1.0, g, grid);
        TrajectorySeries well = integrate_double_well(1.0, g, grid);
        CHECK(sup_deviation(pen, well, "n12_over_N") < 1e-7);
    }
}

TEST_CASE("oscillatory regime swings through rho1 = 0, trapped stays above 1/2") {
    TimeGrid grid{40.0, 1e-3};
    {
        TrajectorySeries s = integrate_pendulum(1.0, 0.5, grid);
        double lo = 1.0;
        for (double v : s.column("rho1")) lo = std::min(lo, v);
        CHECK(lo < 0.05);  // full population swings
    }
    {
        TrajectorySeries s = integrate_pendulum(1.0, 3.0, grid);
        double lo = 1.0;
        for (double v : s.column("rho1")) lo = std::min(lo, v);
        CHECK(lo > 0.5);  // locked above half filling
    }
}

TEST_CASE("small-g limit approaches the pure Rabi law") {
    const double eps = 1.0, g = 1e-3;
    TimeGrid grid{10.0, 1e-3};
    TrajectorySeries s = integrate_pendulum(eps, g, grid);
    double worst = 0.0;
    for (size_t k = 0; k < s.times.size(); ++k) {
        const double c = std::cos(eps * s.times[k]);
        worst = std::max(worst, std::abs(s.column("rho1")[k] - c * c));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("rho1 mapping rejects g = 0") {
    CHECK_THROWS_AS(rho1_from_pendulum(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_pendulum(1.0, 0.0, TimeGrid{1.0, 0.1}),
                    std::invalid_argument);
}

TEST_CASE("initial conditions") {
    TimeGrid grid{1.0, 0.5};
    TrajectorySeries pen = integrate_pendulum(1.0, 0.7, grid);
    CHECK(pen.column("phi")[0] == 0.0);
    CHECK(pen.column("phi_dot")[0] == doctest::Approx(1.4).epsilon(1e-15));
    CHECK(pen.column("rho1")[0] == doctest::Approx(1.0).epsilon(1e-15));
    TrajectorySeries well = integrate_double_well(1.0, 0.7, grid);
    CHECK(well.column("n12_over_N")[0] == 1.0);
    CHECK(well.column("r_dot")[0] == 0.0);
}
