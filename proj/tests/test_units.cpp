#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heliox/units.hpp"

#include <random>

using namespace heliox;

TEST_CASE("constant pins") {
    CHECK(units::hbar_eV_fs == doctest::Approx(0.6582120).epsilon(1e-6));
    CHECK(units::hbar2_over_2me_eV_nm2 == doctest::Approx(0.0380998).epsilon(1e-5));
    CHECK(units::he4_mass / units::electron_mass == doctest::Approx(7296.0).epsilon(1e-3));
    // Coulomb constant in eV nm, the textbook 1.44
    CHECK(units::coulomb_eV_nm == doctest::Approx(1.439964).epsilon(1e-5));
}

TEST_CASE("energy to wavelength") {
    CHECK(units::energy_to_wavelength_um(0.2279) == doctest::Approx(5.44).epsilon(1e-3));
    CHECK(units::energy_to_wavelength_um(1.2398) == doctest::Approx(1.000).epsilon(1e-3));
    CHECK(units::energy_to_wavelength_um(0.125) == doctest::Approx(9.9).epsilon(5e-3));
    CHECK_THROWS_AS((void)units::energy_to_wavelength_um(0.0), std::domain_error);
    CHECK_THROWS_AS((void)units::energy_to_wavelength_um(-1.0), std::domain_error);
}

TEST_CASE("wavelength-energy product is 2 pi hbar c") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> mag(-6.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double e = std::pow(10.0, mag(gen));
        const double lambda_nm = units::energy_to_wavelength_um(e) * 1e3;
        CHECK(lambda_nm * e == doctest::Approx(units::hc_eV_nm).epsilon(1e-10));
        CHECK(units::wavelength_um_to_energy_eV(lambda_nm * 1e-3) ==
              doctest::Approx(e).epsilon(1e-10));
    }
}

TEST_CASE("rate to lifetime") {
    CHECK(units::rate_to_lifetime_s(0.22e6) == doctest::Approx(4.5e-6).epsilon(0.02));
    CHECK(units::rate_to_lifetime_s(5.20e5) == doctest::Approx(1.92e-6).epsilon(0.01));
    CHECK(units::rate_to_lifetime_s(1.0) == 1.0);
    CHECK_THROWS_AS((void)units::rate_to_lifetime_s(0.0), std::domain_error);
}

TEST_CASE("energy-frequency round trips invert") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> mag(-8.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const double e = std::pow(10.0, mag(gen));
        CHECK(units::eV_from_omega_radfs(units::omega_radfs_from_eV(e)) ==
              doctest::Approx(e).epsilon(1e-10));
        CHECK(units::bar_from_eV_nm3(units::eV_nm3_from_bar(e)) ==
              doctest::Approx(e).epsilon(1e-10));
    }
}

TEST_CASE("frequency conventions") {
    // g = 2 pi x 3.81 GHz in rad/fs
    CHECK(units::omega_radfs_from_cyclic_GHz(3.81) ==
          doctest::Approx(2.39389e-5).epsilon(1e-4));
    CHECK(units::rate_perfs_from_GHz(0.02) == doctest::Approx(2e-8).epsilon(1e-12));
    CHECK(units::rate_perfs_from_MHz(0.22) == doctest::Approx(2.2e-10).epsilon(1e-12));
}
