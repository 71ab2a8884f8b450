#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "logdamp/errors.hpp"
#include "logdamp/spectral.hpp"
#include "oracles.hpp"

using namespace logdamp;
using std::numbers::pi;

namespace {

// int_{-X}^{X} c e^{-x^2/(2w^2)} cos(r x) dx by the trapezoid rule, which is
// spectrally accurate for this integrand.
double gaussian_transform_1d(double c, double w, double r) {
  const double X = 40.0 * w;
  const int m = 40000;
  const double h = 2.0 * X / m;
  double s = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double x = -X + i * h;
    const double f = c * std::exp(-x * x / (2 * w * w)) * std::cos(r * x);
    s += (i == 0 || i == m) ? 0.5 * f : f;
  }
  return s * h;
}

// Radial transform in R^3: (4 pi / r) int_0^inf u(rho) rho sin(r rho) d rho.
double gaussian_transform_3d(double w, double r) {
  const double X = 40.0 * w;
  const int m = 40000;
  const double h = X / m;
  double s = 0.0;
  for (int i = 1; i <= m; ++i) {
    const double rho = i * h;
    const double f = std::exp(-rho * rho / (2 * w * w)) * rho * std::sin(r * rho);
    s += i == m ? 0.5 * f : f;
  }
  return 4.0 * pi / r * s * h;
}

double oracle_u_hat(const SpectralState& s, double t, double r) {
  return static_cast<double>(oracle::propagator(r, s.params().theta(), t).first) *
         s.datum().transform(r);
}

}  // namespace

TEST_CASE("Gaussian datum transform and moments") {
  const InitialDatum d1 = InitialDatum::scaled_gaussian(1, 0.7, 2.5);
  CHECK(d1.p1() == doctest::Approx(2.5 * std::sqrt(2 * pi) * 0.7).epsilon(1e-15));
  for (double r : {0.0, 0.3, 1.0, 4.0}) {
    CHECK(d1.transform(r) == doctest::Approx(gaussian_transform_1d(2.5, 0.7, r)).epsilon(1e-12));
  }
  const InitialDatum d3 = InitialDatum::gaussian(3, 1.3);
  for (double r : {0.2, 1.0, 2.5}) {
    CHECK(d3.transform(r) == doctest::Approx(gaussian_transform_3d(1.3, r)).epsilon(1e-10));
  }
  CHECK(d3.value(0.0) == 1.0);
  CHECK(d3.value(1.3) == doctest::Approx(std::exp(-0.5)));
  CHECK(d3.l1_norm() == doctest::Approx(std::pow(2 * pi, 1.5) * std::pow(1.3, 3)));
}

TEST_CASE("datum rejects bad input") {
  CHECK_THROWS_AS(InitialDatum::gaussian(0, 1.0), DomainError);
  CHECK_THROWS_AS(InitialDatum::gaussian(1, 0.0), DomainError);
  CHECK_THROWS_AS(InitialDatum::scaled_gaussian(1, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(InitialDatum::gaussian(1, 1.0).weighted_norm(0.0), DomainError);
  CHECK_THROWS_AS(SpectralState(ModelParams(2, 0.2), InitialDatum::gaussian(1, 1.0)), DomainError);
}

TEST_CASE("weighted L1 norm against a radial midpoint sum") {
  for (int n : {1, 2, 3}) {
    const double w = 0.8;
    const double gamma = 0.6;
    const InitialDatum d = InitialDatum::scaled_gaussian(n, w, -1.5);
    const double omega = n == 1 ? 2.0 : (n == 2 ? 2 * pi : 4 * pi);
    const int m = 200000;
    const double X = 40.0 * w;
    const double h = X / m;
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      const double rho = (i + 0.5) * h;
      s += (1 + std::pow(rho, gamma)) * 1.5 * std::exp(-rho * rho / (2 * w * w)) * std::pow(rho, n - 1);
    }
    // the midpoint sum carries an O(h^{1 + gamma}) error from the kink of rho^gamma
    CHECK(d.weighted_norm(gamma) == doctest::Approx(omega * s * h).epsilon(1e-6));
  }
}

TEST_CASE("moment decomposition reconstructs the transform") {
  const InitialDatum d = InitialDatum::gaussian(2, 1.1);
  for (double r : {0.0, 1e-9, 1e-3, 0.5, 3.0}) {
    const MomentDecomposition m = moment_decomposition(d, r);
    CHECK(m.b1 == 0.0);
    CHECK(m.p1 == d.p1());
    CHECK(m.a1 + m.p1 == doctest::Approx(d.transform(r)).epsilon(1e-15));
  }
  // A1 = P1 (e^{-w^2 r^2 / 2} - 1) without cancellation
  CHECK(moment_decomposition(d, 1e-9).a1 ==
        doctest::Approx(-d.p1() * 1.21 * 1e-18 / 2).epsilon(1e-12));
  CHECK_THROWS_AS(moment_decomposition(d, -1.0), DomainError);
}

TEST_CASE("u_hat matches the complex root formula across zones") {
  for (double theta : {0.1, 0.25, 0.4}) {
    for (int n : {1, 2}) {
      const SpectralState s(ModelParams(n, theta), InitialDatum::gaussian(n, 1.0));
      const double delta = s.thresholds().delta;
      for (double r : {1e-6, 1e-3, 0.3 * delta, 0.9 * delta, 1.1 * delta, 3 * delta, 2.0, 6.0}) {
        for (double t : {0.01, 0.5, 3.0, 20.0}) {
          CAPTURE(theta);
          CAPTURE(r);
          CAPTURE(t);
          const double v = s.u_hat(t, r);
          const double expected = oracle_u_hat(s, t, r);
          CHECK(std::abs(v - expected) <= 1e-11 * (std::abs(expected) + t * s.datum().transform(r) * 1e-3));
          const auto [pv, pd] = oracle::propagator(r, theta, t);
          CHECK(std::abs(s.u_hat_dt(t, r) - static_cast<double>(pd) * s.datum().transform(r)) <=
                1e-11 * (1e-3 + std::abs(static_cast<double>(pd))) * s.datum().transform(r));
          (void)pv;
        }
      }
    }
  }
}

TEST_CASE("initial conditions and r = 0") {
  const SpectralState s(ModelParams(1, 0.3), InitialDatum::gaussian(1, 1.0));
  for (double r : {0.0, 1e-5, 0.2, 4.0}) {
    CHECK(s.u_hat(0.0, r) == 0.0);
    CHECK(s.u_hat_dt(0.0, r) == doctest::Approx(s.datum().transform(r)).epsilon(1e-15));
  }
  CHECK(s.u_hat(2.0, 0.0) == doctest::Approx(2.0 * s.datum().p1()));
  // small t: u_hat ~ t u1_hat (1 - L t / 2)
  const double r = 0.7;
  const double t = 1e-4;
  const double L = damping_symbol(r, s.params());
  CHECK(s.u_hat(t, r) ==
        doctest::Approx(t * s.datum().transform(r) * (1 - L * t / 2)).epsilon(1e-8));
}

TEST_CASE("high zone value and derivative at b t = pi") {
  const SpectralState s(ModelParams(1, 0.2), InitialDatum::gaussian(1, 1.0));
  const double r = 2.0;
  const CharRoots c = char_roots(r, s.params());
  REQUIRE(c.zone == Zone::High);
  const double t = pi / c.b();
  const Propagator prop = propagator(c, t);
  CHECK(std::abs(prop.value) < 1e-15);
  CHECK(prop.derivative == doctest::Approx(-std::exp(-c.a * t)).epsilon(1e-12));
  // the derivative also matches a central difference of the value
  const double h = 1e-5;
  const double fd = (propagator(c, t + h).value - propagator(c, t - h).value) / (2 * h);
  CHECK(prop.derivative == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("propagator is continuous through the double-root band") {
  for (double theta : {0.1, 0.25, 0.45}) {
    const ModelParams p(1, theta);
    const double delta = compute_thresholds(p).delta;
    for (int k = 3; k <= 12; ++k) {
      for (double sign : {-1.0, 1.0}) {
        const double r = delta * (1 + sign * std::pow(10.0, -k));
        for (double t : {1.0, 30.0}) {
          const Propagator prop = propagator(char_roots(r, p), t);
          const auto [v, dv] = oracle::propagator(r, theta, t);
          CAPTURE(theta);
          CAPTURE(k);
          CHECK(oracle::rel(prop.value, static_cast<double>(v)) < 1e-9);
          CHECK(std::abs(prop.derivative - static_cast<double>(dv)) <
                1e-9 * std::max(1e-3, std::abs(static_cast<double>(dv))));
        }
      }
    }
  }
}

TEST_CASE("u_hat solves the mode ODE (finite differences)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(unit(rng) * 3);
    const double theta = 0.02 + 0.46 * unit(rng);
    const double r = std::pow(10.0, -4 + 4.5 * unit(rng));
    const double t = std::pow(10.0, -1 + 3 * unit(rng));
    const SpectralState s(ModelParams(n, theta), InitialDatum::gaussian(n, 0.2));
    const double L = damping_symbol(r, s.params());
    // h resolves the fastest rate and oscillation of this mode
    const double rate = std::max({L, r, 1.0 / t});
    const double h = 0.02 / rate;
    auto u = [&](double tau) { return s.u_hat(tau, r); };
    const double utt = (-u(t + 2 * h) + 16 * u(t + h) - 30 * u(t) + 16 * u(t - h) - u(t - 2 * h)) /
                       (12 * h * h);
    const double ut = s.u_hat_dt(t, r);
    const double ut_fd = (-u(t + 2 * h) + 8 * u(t + h) - 8 * u(t - h) + u(t - 2 * h)) / (12 * h);
    const double scale = std::max({std::abs(utt), std::abs(L * ut), std::abs(r * r * u(t))});
    CAPTURE(theta);
    CAPTURE(r);
    CAPTURE(t);
    CHECK(std::abs(utt + L * ut + r * r * u(t)) / scale < 1e-5);
    CHECK(std::abs(ut - ut_fd) <= 1e-6 * std::max(std::abs(ut), scale * h));
  }
}

TEST_CASE("profile pieces") {
  const SpectralState s(ModelParams(2, 0.2), InitialDatum::gaussian(2, 1.0));
  const double p1 = s.datum().p1();
  for (double r : {1e-6, 1e-3, 0.1, 1.5}) {
    for (double t : {0.5, 10.0, 1e3}) {
      const ProfileValue v = s.profile(t, r);
      const double L = damping_symbol(r, s.params());
      CHECK(v.phi1 == doctest::Approx(p1 * std::exp(-r * r / L * t) / L).epsilon(1e-14));
      CHECK(v.phi2 == doctest::Approx(p1 * std::exp(-L * t) / L).epsilon(1e-14));
      CHECK(std::abs(v.phi - (v.phi1 - v.phi2)) <= 1e-10 * std::max(std::abs(v.phi1), std::abs(v.phi)));
    }
  }
  // r -> 0: phi -> t P1
  const ProfileValue zero = s.profile(3.0, 0.0);
  CHECK(zero.phi == doctest::Approx(3.0 * p1));
  CHECK(s.profile(3.0, 1e-150).phi == doctest::Approx(3.0 * p1).epsilon(1e-10));
}

TEST_CASE("remainder terms decompose u_hat - phi") {
  for (double theta : {0.1, 0.3}) {
    const SpectralState s(ModelParams(1, theta), InitialDatum::gaussian(1, 1.0));
    const Thresholds& th = s.thresholds();
    for (double r : {th.eta_cubed, 1e-3 * th.eta_cubed}) {
      for (double t : {1.0, 1e3}) {
        const auto F = s.remainder_terms(t, r);
        const CharRoots c = char_roots(r, s.params());
        const double L = 2 * c.a;
        const double u1 = s.datum().transform(r);
        const double A = r * r / L;
        double sum = 0.0;
        for (double f : F) sum += f;
        CHECK(sum == doctest::Approx(s.u_hat(t, r) - s.profile(t, r).phi).epsilon(1e-12));
        // F6 in closed form: (e^{-L t} - e^{t lambda_-}) u1_hat / gap
        const oracle::ld f6 =
            (std::exp(-(oracle::ld)L * t) - std::exp((oracle::ld)c.lambda_minus * t)) / c.gap * u1;
        // F6 is a residual of u_hat - phi, so its rounding scales with |u_hat|
        CHECK(std::abs(F[5] - static_cast<double>(f6)) <=
              1e-12 * (std::abs(s.u_hat(t, r)) + std::abs(F[0]) + std::abs(F[1])));
        // pointwise bound on F4
        const double lp = c.lambda_plus;
        CHECK(std::abs(F[3]) <= std::exp(-A * t) * (lp * lp * t / L) / c.gap * std::abs(u1) * (1 + 1e-12));
        CHECK(F[2] == doctest::Approx(std::exp(-A * t) * moment_decomposition(s.datum(), r).a1 / L));
      }
    }
    CHECK_THROWS_AS(s.remainder_terms(1.0, 2 * th.eta_cubed), DomainError);
  }
}

TEST_CASE("profile_error avoids cancellation near r = 0") {
  struct Case {
    double theta;
    double r;
    double t;
  };
  for (const Case& k : {Case{0.4, 1e-15, 1e10}, Case{0.2, 1e-8, 1e6}, Case{0.3, 1e-9, 1e4}}) {
    const SpectralState s(ModelParams(2, k.theta), InitialDatum::gaussian(2, 1.0));
    REQUIRE(k.r <= s.thresholds().eta_cubed);
    const oracle::Roots q = oracle::roots(k.r, k.theta);
    const oracle::ld L = oracle::symbol(k.r, k.theta);
    const oracle::ld A = (oracle::ld)k.r * k.r / L;
    const oracle::ld u = ((std::exp((oracle::ld)k.t * q.plus) - std::exp((oracle::ld)k.t * q.minus)) / (q.plus - q.minus)).real() *
                         s.datum().transform(k.r);
    const oracle::ld phi = s.datum().p1() * (std::exp(-A * k.t) - std::exp(-L * k.t)) / L;
    CAPTURE(k.theta);
    CHECK(oracle::rel(s.profile_error(k.t, k.r), static_cast<double>(u - phi)) < 1e-6);
  }
}
