#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "elion/errors.hpp"
#include "elion/scattering.hpp"
#include "oracles/convolution_quadrature.hpp"

using namespace elion;

TEST_CASE("|Sigma(0)|^2 closed form") {
  for (double v : {0.5, 1.0, 2.713, 10.0, 60.0}) {
    for (double a : {1.0, 37.0, 1500.0}) {
      const double want = M_PI / (v * std::sinh(M_PI / v));
      CHECK(std::norm(sigma(a, {}, v)) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("sigma agrees with brute-force convolution quadrature") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> vs(1.0, 20.0), as(1.0, 2000.0), bs(0.0, 4.0);
  for (int i = 0; i < 6; ++i) {
    const double v = vs(rng), a = as(rng), b = bs(rng) * a;
    const Complex got = sigma(a, {b, 0.0}, v);
    const Complex want = oracle::sigma_quadrature(a, b, v);
    INFO("v = " << v << " a = " << a << " b = " << b);
    CHECK(std::abs(got - want) < 1e-7);
  }
}

TEST_CASE("sigma depends only on |offset| and scales as a^{-2i/v}") {
  const double v = 2.7;
  const Complex x = sigma(10.0, {3.0, 4.0}, v);
  CHECK(std::abs(x - sigma(10.0, {5.0, 0.0}, v)) < 1e-14);
  CHECK(std::abs(x - sigma(10.0, {0.0, -5.0}, v)) < 1e-14);
  const Complex scaled = sigma(20.0, {10.0, 0.0}, v);
  CHECK(std::abs(scaled - x * std::polar(1.0, -2.0 / v * std::log(2.0))) < 1e-13);
}

TEST_CASE("sigma rejects bad input") {
  CHECK_THROWS_AS(sigma(0.0, {}, 1.0), DomainError);
  CHECK_THROWS_AS(sigma(1.0, {}, 0.0), DomainError);
  CHECK_THROWS_AS(sigma(1.0, {NAN, 0.0}, 1.0), DomainError);
}

TEST_CASE("sigma_phase is a continuous lift of arg sigma") {
  const double v = 1.1, a = 100.0;
  double previous = sigma_phase(a, 0.0, v);
  CHECK(std::abs(std::remainder(previous - std::arg(sigma(a, {}, v)), 2 * M_PI)) < 1e-12);
  for (int i = 1; i <= 4000; ++i) {
    const double b = a * 0.02 * i;
    const double ph = sigma_phase(a, b, v);
    CHECK(std::abs(std::remainder(ph - std::arg(sigma(a, {b, 0.0}, v)), 2 * M_PI)) < 1e-10);
    CHECK(std::abs(ph - previous) < 0.5);
    previous = ph;
  }
  // Far field: phase approaches -(2/v) ln b.
  const double b = 1e4 * a;
  CHECK(std::abs(std::remainder(sigma_phase(a, b, v) + 2.0 / v * std::log(b), 2 * M_PI)) < 1e-6);
}

TEST_CASE("scatter at the trap centre") {
  ScatterInput in{BeamConfig::from_energy(100.0), TrapConfig::from_mhz(0.5), {}};
  const auto r = scatter(in);
  const double v = in.beam.velocity();
  CHECK(r.p_scat == doctest::Approx(1.0 - M_PI / (v * std::sinh(M_PI / v))).epsilon(1e-12));
  CHECK(r.p_scat == doctest::Approx(0.19316).epsilon(1e-4));
  CHECK(r.delta_phi == doctest::Approx(std::arg(r.element)));
}

TEST_CASE("impact vector follows the displaced ion") {
  const TrapConfig trap = TrapConfig::from_mhz(0.5);
  ScatterInput in{BeamConfig::from_energy(100.0, {2.0 * trap.r0(), 0.0}), trap,
                  {Complex{std::sqrt(2.0), 0.0}, Complex{0.0, 0.0}}};
  const Vec2 b = in.impact_vector();
  CHECK(b.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(scatter(in).p_scat - scatter({BeamConfig::from_energy(100.0), trap, {}}).p_scat) < 1e-12);
  in.beam = in.beam.with_spot_width(0.1 * trap.r0());
  CHECK(in.effective_width() == doctest::Approx(trap.r0() * std::sqrt(1.02)));
}

TEST_CASE("P_scat decays quadratically in b") {
  const TrapConfig trap = TrapConfig::from_mhz(0.5);
  const double v = electron_velocity(100.0);
  const double a = trap.r0();
  const auto p = [&](double b) { return 1.0 - std::norm(sigma(a, {b * a, 0.0}, v)); };
  const double slope = std::log(p(50.0) / p(5.0)) / std::log(10.0);
  CHECK(slope == doctest::Approx(-2.0).epsilon(0.025));
}

TEST_CASE("phase_profile") {
  const TrapConfig trap = TrapConfig::from_mhz(0.5);
  ScatterInput in{BeamConfig::from_energy(100.0), trap, {}};
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.05 * i * trap.r0());
  const auto prof = phase_profile(in, grid, 3);
  REQUIRE(prof.size() == grid.size());
  CHECK(prof[0].delta_phi_rel == 0.0);
  for (std::size_t i = 0; i < prof.size(); ++i) {
    const double ref = sigma_phase(trap.r0(), grid[i], in.beam.velocity()) -
                       sigma_phase(trap.r0(), 0.0, in.beam.velocity());
    CHECK(prof[i].delta_phi_rel == doctest::Approx(ref).epsilon(1e-10));
    if (i > 0) CHECK(prof[i].p_scat <= prof[i - 1].p_scat);
  }
  CHECK(phase_profile(in, grid, 1)[57].delta_phi_rel == prof[57].delta_phi_rel);
}

TEST_CASE("phase_profile grid checks") {
  ScatterInput in{BeamConfig::from_energy(100.0), TrapConfig::from_mhz(0.5), {}};
  const std::vector<double> unsorted{0.0, 2.0, 1.0};
  CHECK_THROWS_AS(phase_profile(in, unsorted), DomainError);
  const std::vector<double> negative{-1.0, 0.0};
  CHECK_THROWS_AS(phase_profile(in, negative), DomainError);
  // Slow electrons accumulate several radians between these samples.
  ScatterInput slow{BeamConfig::from_energy(1.0), TrapConfig::from_mhz(0.5), {}};
  const double r0 = slow.trap.r0();
  const std::vector<double> coarse{0.0, 10.0 * r0, 100.0 * r0};
  CHECK_THROWS_AS(phase_profile(slow, coarse), UnwrapError);
}
