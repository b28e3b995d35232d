#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qthermo/drive.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/metrics.hpp"
#include "qthermo/thermal.hpp"
#include "test_support.hpp"

using namespace qthermo;

namespace {

const ThermalSpec kPaperThermal = ThermalSpec::from_temperature_hz(1580.2);

// Independent reference: classical RK4 on dU/dt = -2 pi i H(t) U with H
// assembled directly from the drive formula.
ComplexMatrix rk4_propagator(const DriveProtocol& p, std::size_t steps) {
  using namespace std::complex_literals;
  auto rhs = [&](double t, const ComplexMatrix& u) -> ComplexMatrix {
    const double nu = p.nu_i + (p.nu_f - p.nu_i) * t / p.tau;
    const double a = std::numbers::pi * t / (2.0 * p.tau);
    ComplexMatrix h(2, 2);
    h << 0.0, -0.5 * nu * (std::cos(a) - 1i * std::sin(a)),
        -0.5 * nu * (std::cos(a) + 1i * std::sin(a)), 0.0;
    return -2.0 * std::numbers::pi * 1i * h * u;
  };
  const double dt = p.tau / static_cast<double>(steps);
  ComplexMatrix u = ComplexMatrix::Identity(2, 2);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const ComplexMatrix k1 = rhs(t, u);
    const ComplexMatrix k2 = rhs(t + dt / 2, u + dt / 2 * k1);
    const ComplexMatrix k3 = rhs(t + dt / 2, u + dt / 2 * k2);
    const ComplexMatrix k4 = rhs(t + dt, u + dt * k3);
    u += dt / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

}  // namespace

TEST_CASE("drive_hamiltonian endpoints and midpoint") {
  const DriveProtocol p{2000.0, 3600.0, 100e-6, 256};
  CHECK(max_abs_diff(drive_hamiltonian(0.0, p).matrix(),
                     (pauli(PauliAxis::X) * -1000.0).matrix()) < 1e-12);
  CHECK(max_abs_diff(drive_hamiltonian(p.tau, p).matrix(),
                     (pauli(PauliAxis::Y) * -1800.0).matrix()) < 1e-9);

  const double nu_mid = (p.nu_i + p.nu_f) / 2.0;
  const auto expected =
      (pauli(PauliAxis::X) + pauli(PauliAxis::Y)) * (-0.5 * nu_mid / std::sqrt(2.0));
  const auto h_mid = drive_hamiltonian(p.tau / 2.0, p);
  CHECK(max_abs_diff(h_mid.matrix(), expected.matrix()) < 1e-9);
  const auto spec = spectral_decompose(h_mid);
  CHECK(spec.eigenvalues(0) == doctest::Approx(-(p.nu_i + p.nu_f) / 4.0).epsilon(1e-13));
  CHECK(spec.eigenvalues(1) == doctest::Approx((p.nu_i + p.nu_f) / 4.0).epsilon(1e-13));

  CHECK_THROWS_AS(drive_hamiltonian(-1e-9, p), InvalidInput);
  CHECK_THROWS_AS(drive_hamiltonian(p.tau * 1.001, p), InvalidInput);
  CHECK_THROWS_AS(drive_hamiltonian(0.0, DriveProtocol{2000.0, 3600.0, 0.0, 1}),
                  InvalidInput);
}

TEST_CASE("drive spectrum is +-nu(t)/2 along the whole ramp") {
  const DriveProtocol p{2000.0, 5000.0, 800e-6, 256};
  for (int k = 0; k < 100; ++k) {
    const double t = p.tau * k / 99.0;
    const double half = 0.5 * p.frequency_at(t);
    const auto ev = spectral_decompose(drive_hamiltonian(t, p)).eigenvalues;
    CHECK(ev(0) == doctest::Approx(-half).epsilon(1e-13));
    CHECK(ev(1) == doctest::Approx(half).epsilon(1e-13));
  }
}

TEST_CASE("closed-form slice exponential matches the spectral route") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dt_dist(1e-7, 1e-3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = testing::random_hermitian(2, rng, 3000.0);
    const double dt = dt_dist(rng);
    CHECK(max_abs_diff(slice_exponential(h, dt),
                       slice_exponential_spectral(h, dt)) < 1e-12);
  }
  // Larger operators take the spectral route and stay unitary.
  const auto h4 = testing::random_hermitian(4, rng, 1000.0);
  CHECK_NOTHROW(UnitaryOperator(slice_exponential(h4, 1e-4)));
}

TEST_CASE("propagator examples") {
  SUBCASE("vanishing drive time gives the identity") {
    // ||U - I|| is first order in tau: at most 2 pi (nu_max / 2) tau.
    for (const double tau : {1e-12, 1e-14}) {
      const DriveProtocol p{2000.0, 3600.0, tau, 256};
      const double bound = std::numbers::pi * p.nu_f * tau;
      CHECK(max_abs_diff(propagator(p).matrix(),
                         ComplexMatrix::Identity(2, 2)) <= bound);
    }
    const DriveProtocol slow{20.0, 36.0, 1e-12, 256};
    CHECK(max_abs_diff(propagator(slow).matrix(),
                       ComplexMatrix::Identity(2, 2)) < 1e-9);
  }
  SUBCASE("unitarity") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> nu(500.0, 8000.0), tau(1e-5, 2e-3);
    for (int trial = 0; trial < 25; ++trial) {
      const DriveProtocol p{nu(rng), nu(rng), tau(rng), 64};
      CHECK(propagator(p).unitarity_error() < 1e-10);
    }
  }
  SUBCASE("tenfold refinement at the converged slice count") {
    const DriveProtocol p{2000.0, 3600.0, 100e-6, 256};
    const PropagatorResult r = propagate(p);
    const auto fine = slice_product(p, 10 * r.slices);
    CHECK(max_abs_diff(r.unitary.matrix(), fine.matrix()) < 1e-8);
  }
  SUBCASE("halving check at convergence") {
    const DriveProtocol p{2000.0, 5000.0, 800e-6, 256};
    const PropagatorResult r = propagate(p, 1e-9);
    CHECK(r.last_delta < 1e-9);
    CHECK(max_abs_diff(r.unitary.matrix(),
                       slice_product(p, r.slices / 2).matrix()) < 1e-9);
  }
  SUBCASE("agrees with an RK4 integration of the Schrodinger equation") {
    for (const double tau : {100e-6, 450e-6, 800e-6}) {
      const DriveProtocol p{2000.0, 3600.0, tau, 256};
      CHECK(max_abs_diff(propagator(p).matrix(), rk4_propagator(p, 20000)) <
            1e-8);
    }
  }
  SUBCASE("time ordering matters") {
    // The exponential of the integrated Hamiltonian is a different unitary.
    const DriveProtocol p{2000.0, 3600.0, 800e-6, 256};
    const std::size_t n = 4096;
    ComplexMatrix integral = ComplexMatrix::Zero(2, 2);
    for (std::size_t k = 0; k < n; ++k)
      integral += drive_hamiltonian((k + 0.5) * p.tau / n, p).matrix() *
                  (p.tau / n);
    const ComplexMatrix unordered =
        slice_exponential(HermitianOperator(hermitian_part(integral)), 1.0);
    CHECK(max_abs_diff(propagator(p).matrix(), unordered) > 1e-2);
  }
  SUBCASE("failure to converge is reported") {
    const DriveProtocol p{2000.0, 3600.0, 100e-6, 1};
    try {
      (void)propagator(p, 1e-18);
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
      CHECK(std::string(e.what()).find("last delta") != std::string::npos);
    }
    CHECK_THROWS_AS(propagator(p, 0.0), InvalidInput);
  }
}

TEST_CASE("evolve") {
  std::mt19937_64 rng(23);
  SUBCASE("identity leaves the state alone") {
    const auto rho = testing::random_density(3, rng);
    CHECK(max_abs_diff(evolve(rho, UnitaryOperator::identity(3)).matrix(),
                       rho.matrix()) < 1e-15);
  }
  SUBCASE("purity, trace and spectrum are preserved") {
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::Index d = 2 + trial % 5;
      const auto rho = testing::random_density(d, rng);
      const UnitaryOperator u(testing::random_unitary(d, rng));
      const auto out = evolve(rho, u);
      CHECK(std::abs(out.purity() - rho.purity()) < 1e-10);
      CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-10);
      const RealVector a = spectral_decompose(rho.as_operator()).eigenvalues;
      const RealVector b = spectral_decompose(out.as_operator()).eigenvalues;
      CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(evolve(DensityMatrix::maximally_mixed(2),
                           UnitaryOperator::identity(3)),
                    InvalidInput);
  }
  SUBCASE("slow driving approaches the final Gibbs populations") {
    const DriveProtocol base{2000.0, 3600.0, 100e-6, 256};
    const auto h_i = drive_hamiltonian(0.0, base);
    const RealVector initial =
        populations(gibbs_state(h_i, kPaperThermal), spectral_decompose(h_i));
    const auto final_populations = [&](double tau) {
      DriveProtocol p = base;
      p.tau = tau;
      const auto rho_tau =
          evolve(gibbs_state(h_i, kPaperThermal), propagator(p));
      return RealVector(
          populations(rho_tau, spectral_decompose(drive_hamiltonian(tau, p))));
    };
    const auto h_f = drive_hamiltonian(base.tau, base);
    const RealVector target =
        populations(gibbs_state(h_f, kPaperThermal), spectral_decompose(h_f));
    const auto gap = [&](double tau) {
      return (final_populations(tau) - target).cwiseAbs().maxCoeff();
    };
    const double adiabatic = gap(10e-3);
    CHECK(adiabatic < gap(800e-6));
    CHECK(adiabatic < gap(100e-6));
    // Isolated driving keeps the initial populations in the adiabatic limit,
    // so the gap settles at |p_i - p_f| rather than zero.
    CHECK((final_populations(10e-3) - initial).cwiseAbs().maxCoeff() < 1e-3);
    CHECK(adiabatic ==
          doctest::Approx((initial - target).cwiseAbs().maxCoeff()).epsilon(1e-2));
  }
}

TEST_CASE("sudden quench leaves the state unchanged") {
  const DriveProtocol p{2000.0, 3600.0, 1e-9, 256};
  const auto h_i = drive_hamiltonian(0.0, p);
  const auto h_f = drive_hamiltonian(p.tau, p);
  const auto rho_i = gibbs_state(h_i, kPaperThermal);
  const auto rho_tau = evolve(rho_i, propagator(p));
  const double expected =
      (rho_i.matrix() * (h_f.matrix() - h_i.matrix())).trace().real();
  CHECK(std::abs(average_work(rho_i, h_i, rho_tau, h_f) - expected) <
        1e-6 * p.nu_f);
}
