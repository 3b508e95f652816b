#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "convexlab/errors.hpp"
#include "convexlab/finite_diff.hpp"
#include "convexlab/kernels.hpp"

using namespace cvx;
using namespace cvx::kernels;

namespace {

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

}  // namespace

TEST_CASE("ramp flats are exact") {
  CHECK(ramp_deriv(-0.3, 0) == 0.0);
  CHECK(ramp_deriv(0.0, 0) == 0.0);
  CHECK(ramp_deriv(1.0, 0) == 1.0);
  CHECK(ramp_deriv(7.5, 0) == 1.0);
  for (int j = 1; j <= 6; ++j) {
    CHECK(ramp_deriv(-0.1, j) == 0.0);
    CHECK(ramp_deriv(1.2, j) == 0.0);
  }
}

TEST_CASE("ramp midpoint and symmetry") {
  // w(1/2) = 0, so r(1/2) = 1/2 exactly.
  CHECK(ramp_deriv(0.5, 0) == 0.5);
  for (double t : {0.1, 0.25, 0.4, 0.45, 0.7, 0.9}) {
    CHECK(std::fabs(ramp_deriv(t, 0) + ramp_deriv(1.0 - t, 0) - 1.0) < 1e-14);
  }
}

TEST_CASE("ramp is monotone and within [0,1]") {
  double prev = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = static_cast<double>(i) / 200.0;
    const double v = ramp_deriv(t, 0);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(v >= prev);
    prev = v;
  }
  for (double t : {0.2, 0.5, 0.8}) CHECK(ramp_deriv(t, 1) > 0.0);
}

TEST_CASE("ramp derivatives agree with finite differences") {
  for (double t : {0.3, 0.55, 0.8}) {
    for (int j = 1; j <= 4; ++j) {
      const auto fd = fd_derivative([](double u) { return ramp_deriv(u, 0); }, t, j, 0.02);
      CHECK(rel_err(ramp_deriv(t, j), fd.value) < 1e-6);
    }
  }
}

TEST_CASE("first ramp derivative at the midpoint is exact") {
  // w'(1/2) = 8 and sigma'(0) = 1/4, so r'(1/2) = 2; the series recurrence
  // produces it without rounding.
  CHECK(ramp_deriv(0.5, 1) == 2.0);
}

TEST_CASE("ramp enclosures contain sampled values") {
  for (int j = 0; j <= 5; ++j) {
    for (auto box : {Interval(0.2, 0.3), Interval(0.45, 0.55), Interval(-0.5, 0.1),
                     Interval(0.9, 1.3), Interval(0.001, 0.02)}) {
      const Interval enc = ramp_deriv_enclosure(box, j);
      for (int i = 0; i <= 20; ++i) {
        const double t = box.lo() + box.width() * static_cast<double>(i) / 20.0;
        CHECK(enc.lo() <= ramp_deriv(t, j) + 1e-12);
        CHECK(ramp_deriv(t, j) <= enc.hi() + 1e-12);
      }
    }
  }
}

TEST_CASE("tail bound dominates sampled endpoint-strip values") {
  for (int j : {1, 2, 3, 5, 8}) {
    const double tau = tail_tau(j);
    const double bound = ramp_tail_bound(j);
    CHECK(bound > 0.0);
    for (double t : {tau, tau / 2.0, tau / 7.0, tau / 30.0}) {
      CHECK(std::fabs(ramp_deriv(t, j)) <= bound);
      // right strip by symmetry
      CHECK(std::fabs(ramp_deriv(1.0 - t, j)) <= bound);
    }
  }
}

TEST_CASE("bridge values and flats") {
  CHECK(bridge_eval(-2.0, 0) == 0.0);
  CHECK(bridge_eval(-1.0, 0) == 0.0);
  CHECK(bridge_eval(0.0, 0) == -1.0);
  CHECK(bridge_eval(5.0, 0) == -1.0);
  CHECK(bridge_eval(5.0, 3) == 0.0);
  CHECK(bridge_eval(-0.5, 0) == -0.5);  // -r(1/2)
  double prev = 1.0;
  for (double x = -0.95; x < 0.0; x += 0.05) {
    const double v = bridge_eval(x, 0);
    CHECK(v <= prev);
    prev = v;
  }
  CHECK_THROWS_AS(bridge_eval(0.5, 13), CapabilityError);
}

TEST_CASE("scaled bridge values, domain, and monotonicity in eps") {
  CHECK(b_eps_eval(0.5, 2.0, 0) == -0.5);
  CHECK(b_eps_eval(1.0, -0.5, 0) == bridge_eval(-0.5, 0));
  CHECK_THROWS_AS(b_eps_eval(0.0, 0.5, 0), DomainError);
  CHECK_THROWS_AS(b_eps_eval(1.5, 0.5, 0), DomainError);
  CHECK_THROWS_AS(b_eps_eval(-0.2, 0.5, 0), DomainError);
  // d/deps [eps b(x-1+eps)] = b + eps b' <= 0: smaller eps sits above.
  for (double x : {0.2, 0.5, 0.8, 1.1}) {
    double prev = 1.0;
    for (double eps : {0.1, 0.3, 0.5, 0.8, 1.0}) {
      const double v = b_eps_eval(eps, x, 0);
      CHECK(v <= prev + 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("cutoff values and range") {
  CHECK(cutoff_eval(0.7, 0) == 1.0);
  CHECK(cutoff_eval(1.0, 0) == 1.0);
  CHECK(cutoff_eval(2.0, 0) == 0.0);
  CHECK(cutoff_eval(2.5, 1) == 0.0);
  CHECK(cutoff_eval(1.5, 0) == 0.5);
  for (double x = -0.5; x < 3.0; x += 0.1) {
    const double v = cutoff_eval(x, 0);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  CHECK(cutoff_eval(1.25, 2) == -ramp_deriv(0.25, 2));
}

TEST_CASE("phi closed-form values") {
  CHECK(phi_eval(KernelIndex(1), 0.25, 0) == 0.125);  // 0.25^{3/2}
  // phi_1'' = (3/2)(1/2) x^{-1/2} on (0,1]
  CHECK(phi_eval(KernelIndex(1), 0.25, 2) == 1.5);
  CHECK(phi_eval(KernelIndex(2), 1.0, 0) == 1.0);
  CHECK(phi_eval(KernelIndex(3), 2.5, 0) == 0.0);
  CHECK(phi_eval(KernelIndex(3), 2.5, 3) == 0.0);
}

TEST_CASE("phi piecewise structure at and below zero") {
  for (int m : {1, 2, 4}) {
    for (int j = 0; j <= m; ++j) {
      CHECK(phi_eval(KernelIndex(m), 0.0, j) == 0.0);
      CHECK(phi_eval(KernelIndex(m), -0.7, j) == 0.0);
    }
    CHECK_THROWS_AS(phi_eval(KernelIndex(m), 0.0, m + 1), NotDifferentiableError);
    CHECK_THROWS_AS(phi_eval(KernelIndex(m), -1.0, m + 1), NotDifferentiableError);
  }
  try {
    phi_eval(KernelIndex(2), 0.0, 3);
    CHECK(false);
  } catch (const NotDifferentiableError& e) {
    CHECK(e.limiting_order == 2);
  }
  CHECK_THROWS_AS(phi_eval(KernelIndex(1), 0.5, 13), CapabilityError);
}

TEST_CASE("phi derivatives agree with finite differences") {
  for (int m : {1, 2, 3}) {
    for (double x : {0.5, 0.9, 1.2, 1.7}) {
      for (int j = 1; j <= 4; ++j) {
        const auto fd = fd_derivative(
            [m](double u) { return phi_eval(KernelIndex(m), u, 0); }, x, j, 0.02);
        CHECK(rel_err(phi_eval(KernelIndex(m), x, j), fd.value) < 5e-6);
      }
    }
  }
}

TEST_CASE("phi enclosures contain sampled derivatives") {
  for (int m : {1, 3}) {
    for (auto box : {Interval(0.5, 0.7), Interval(0.9, 1.1), Interval(1.8, 2.2),
                     Interval(-0.1, 0.1)}) {
      for (int j = 0; j <= std::min(m, 3); ++j) {
        const Interval enc = phi_deriv_enclosure(m, box, j);
        for (int i = 0; i <= 20; ++i) {
          const double x = box.lo() + box.width() * static_cast<double>(i) / 20.0;
          const double v = phi_eval(KernelIndex(m), x, j);
          CHECK(enc.lo() <= v + 1e-12);
          CHECK(v <= enc.hi() + 1e-12);
        }
      }
    }
  }
  CHECK_THROWS_AS(phi_deriv_enclosure(1, Interval(-0.5, 0.5), 2), NotDifferentiableError);
}

TEST_CASE("h values and partials") {
  // h_1(0,0) = 0 + 1*r(1) = 1, exactly.
  CHECK(h_eval(KernelIndex(1), 0.0, 0.0, MultiIndex{{0, 0, 0}}) == 1.0);
  CHECK(h_eval(KernelIndex(1), 0.3, 2.0, MultiIndex{{0, 1, 0}}) == 1.0);
  CHECK(h_eval(KernelIndex(1), 0.3, 2.0, MultiIndex{{1, 1, 0}}) == 0.0);
  CHECK(h_eval(KernelIndex(1), 0.3, 2.0, MultiIndex{{0, 2, 0}}) == 0.0);
  // d_x h_1 at x = -1/2: r'(1/2) = 2.
  CHECK(h_eval(KernelIndex(1), -0.5, 0.0, MultiIndex{{1, 0, 0}}) == 2.0);
  // On the ray x >= 0 every h_m is positive at y = 0.
  for (int m : {1, 2, 5, 9}) {
    CHECK(h_value<double>(m, 0.0, 0.0) > 0.0);
    CHECK(h_value<double>(m, 2.0, 0.0) > 0.0);
  }
  // h_k(-1/k, y) = y since the ramp argument is 0.
  for (int k : {1, 2, 4}) {
    CHECK(h_value<double>(k, -1.0 / k, 0.25) == 0.25);
  }
}

TEST_CASE("term jet matches finite differences of the composition") {
  const KernelConfig cfg;
  for (int m : {1, 2}) {
    for (auto [x, y] : {std::pair{0.5, 0.5}, {-0.3, 0.2}, {0.1, 0.0}}) {
      const auto jet = term_jet(KernelIndex(m), x, y, 3, cfg);
      auto g = [m](double u, double v) {
        const double h = h_value<double>(m, u, v);
        return h > 0.0 ? phi_eval(KernelIndex(m), h, 0) : 0.0;
      };
      // pure x derivatives
      for (int j = 1; j <= 3; ++j) {
        const auto fd = fd_derivative([&](double u) { return g(u, y); }, x, j, 0.02);
        CHECK(rel_err(jet.deriv(MultiIndex{{j, 0, 0}}), fd.value) < 1e-5);
      }
      // pure y derivatives need y bounded away from the kink when h can vanish
      if (y > 0.1) {
        for (int j = 1; j <= 3; ++j) {
          const auto fd = fd_derivative([&](double v) { return g(x, v); }, y, j, 0.02);
          CHECK(rel_err(jet.deriv(MultiIndex{{0, j, 0}}), fd.value) < 1e-5);
        }
      }
      CHECK(jet.value() == doctest::Approx(g(x, y)).epsilon(1e-12));
    }
  }
}

TEST_CASE("term jet error contract where h vanishes") {
  // At x <= -1/m with y = 0 the composition value is 0 and only orders up
  // to m exist.
  const auto jet = term_jet(KernelIndex(2), -3.0, 0.0, 2);
  for (size_t r = 0; r < jet.size(); ++r) CHECK(jet.coeff_at(r) == 0.0);
  CHECK_THROWS_AS(term_jet(KernelIndex(2), -3.0, 0.0, 3), NotDifferentiableError);
  CHECK_THROWS_AS(term_jet(KernelIndex(1), 0.5, 0.5, 13), CapabilityError);
}

TEST_CASE("term jet enclosure contains the pointwise jet") {
  for (int m : {1, 2}) {
    const Interval bx(0.4, 0.6), by(0.1, 0.3);
    const auto enc = term_jet_enclosure(m, bx, by, 3);
    for (double x : {0.4, 0.5, 0.6}) {
      for (double y : {0.1, 0.2, 0.3}) {
        const auto jet = term_jet(KernelIndex(m), x, y, 3);
        for (size_t r = 0; r < jet.size(); ++r) {
          CHECK(enc.coeff_at(r).lo() <= jet.coeff_at(r) + 1e-10);
          CHECK(jet.coeff_at(r) <= enc.coeff_at(r).hi() + 1e-10);
        }
      }
    }
  }
}

TEST_CASE("kernel config validation") {
  KernelConfig bad;
  bad.bridge = "piecewise-poly";
  CHECK_THROWS_AS(bad.validate(), CapabilityError);
  KernelConfig ok;
  CHECK_NOTHROW(ok.validate());
}
