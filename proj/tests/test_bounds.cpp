#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "convexlab/bell.hpp"
#include "convexlab/errors.hpp"
#include "convexlab/kernel_bounds.hpp"
#include "convexlab/kernels.hpp"
#include "convexlab/sup_bound.hpp"

using namespace cvx;
using namespace cvx::bounds;

TEST_CASE("partial Bell polynomials match known closed forms") {
  // B_{3,2}(x1,x2) = 3 x1 x2
  {
    std::vector<double> x = {2.0, 5.0, 0.0};
    CHECK(bell_partial<double>(3, 2, x, 0.0, 1.0) == 30.0);
  }
  // B_{4,2}(x1,x2,x3) = 3 x2^2 + 4 x1 x3
  {
    std::vector<double> x = {1.0, 2.0, 3.0, 0.0};
    CHECK(bell_partial<double>(4, 2, x, 0.0, 1.0) == 3.0 * 4.0 + 4.0 * 3.0);
  }
  // At x = (1,1,...,1) they reduce to Stirling numbers of the second kind.
  BellCoefficientTable tab(12);
  std::vector<double> ones(12, 1.0);
  for (int n = 1; n <= 12; ++n) {
    for (int k = 1; k <= n; ++k) {
      CHECK(bell_partial<double>(n, k, ones, 0.0, 1.0) ==
            static_cast<double>(tab.stirling2[static_cast<size_t>(n)][static_cast<size_t>(k)]));
    }
  }
}

TEST_CASE("branch and bound finds the sup of |x^2 - x| on [0,2]") {
  auto f = [](const Box& b) { return pow_int(b[0], 2) - b[0]; };
  const auto cert = sup_abs_on_box(f, {Interval(0.0, 2.0)}, 1e-6);
  CHECK(cert.converged);
  CHECK(cert.upper >= 2.0);
  CHECK(cert.upper <= 2.0 + 1e-5);
  CHECK(cert.witness <= 2.0);
  CHECK(cert.witness >= 2.0 - 1e-5);
}

TEST_CASE("branch and bound in two variables") {
  auto f = [](const Box& b) { return b[0] * b[1]; };
  const auto cert = sup_abs_on_box(f, {Interval(-1.0, 1.0), Interval(-1.0, 1.0)}, 1e-6);
  CHECK(cert.converged);
  CHECK(cert.upper >= 1.0);
  CHECK(cert.upper <= 1.0 + 1e-5);
}

TEST_CASE("branch and bound stays sound when the budget runs out") {
  auto f = [](const Box& b) { return pow_int(b[0], 2) - b[0]; };
  const auto cert = sup_abs_on_box(f, {Interval(0.0, 2.0)}, 1e-12, 0.0, 5);
  CHECK_FALSE(cert.converged);
  CHECK(cert.upper >= 2.0);
}

TEST_CASE("ramp derivative sup bounds dominate sampled values") {
  CHECK(sup_ramp_deriv(0) == 1.0);
  for (int j : {1, 2, 3, 6}) {
    const double s = sup_ramp_deriv(j);
    CHECK(s > 0.0);
    for (int i = 1; i < 400; ++i) {
      const double t = static_cast<double>(i) / 400.0;
      CHECK(std::fabs(kernels::ramp_deriv(t, j)) <= s);
    }
  }
  // r'(1/2) = 2 pins the first-order sup from below.
  CHECK(sup_ramp_deriv(1) >= 2.0);
  CHECK(sup_ramp_deriv(1) <= 3.0);  // sharp value is close to 2
}

TEST_CASE("phi derivative sup bounds dominate sampled values") {
  for (int m : {1, 2, 4}) {
    for (int j = 0; j <= m; ++j) {
      const double s = sup_phi_deriv(m, j);
      for (int i = 1; i <= 300; ++i) {
        const double x = 2.5 * static_cast<double>(i) / 300.0;
        CHECK(std::fabs(kernels::phi_eval(kernels::KernelIndex(m), x, j)) <= s);
      }
    }
  }
  CHECK_THROWS_AS(sup_phi_deriv(2, 3), PreconditionError);
  // sup of phi_1 itself is at least phi_1(1) = 1.
  CHECK(sup_phi_deriv(1, 0) >= 1.0);
}

TEST_CASE("delta-restricted phi bounds cover orders past m") {
  const int m = 1;
  for (int j : {2, 3, 4}) {
    const double s = sup_phi_deriv_from(m, j, 0.1);
    for (int i = 0; i <= 300; ++i) {
      const double x = 0.1 + (2.5 - 0.1) * static_cast<double>(i) / 300.0;
      CHECK(std::fabs(kernels::phi_eval(kernels::KernelIndex(m), x, j)) <= s);
    }
  }
  CHECK_THROWS_AS(sup_phi_deriv_from(1, 2, 0.0), PreconditionError);
}

TEST_CASE("h derivative bounds") {
  CHECK(sup_h_deriv(3, MultiIndex{{0, 1, 0}}) == 1.0);
  CHECK(sup_h_deriv(3, MultiIndex{{1, 1, 0}}) == 0.0);
  CHECK(sup_h_deriv(3, MultiIndex{{0, 2, 0}}) == 0.0);
  CHECK_THROWS_AS(sup_h_deriv(3, MultiIndex{{0, 0, 0}}), PreconditionError);
  for (int m : {1, 2, 5}) {
    const double s = sup_h_deriv(m, MultiIndex{{1, 0, 0}});
    for (double x = -1.5; x <= 0.5; x += 0.01) {
      CHECK(std::fabs(kernels::h_eval(kernels::KernelIndex(m), x, 0.3, MultiIndex{{1, 0, 0}})) <=
            s);
    }
  }
}

TEST_CASE("term derivative bounds dominate sampled jets") {
  const int m = 2;
  for (int a = 0; a <= m; ++a) {
    for (int b = 0; a + b <= m; ++b) {
      const MultiIndex alpha{{a, b, 0}};
      const double bound = term_deriv_bound(m, alpha);
      for (double x : {-1.2, -0.4, 0.0, 0.5, 1.5}) {
        for (double y : {0.0, 0.2, 1.0, 1.9}) {
          const auto jet = kernels::term_jet(kernels::KernelIndex(m), x, y, m);
          CHECK(std::fabs(jet.deriv(alpha)) <= bound);
        }
      }
    }
  }
  CHECK_THROWS_AS(term_deriv_bound(2, MultiIndex{{2, 1, 0}}), PreconditionError);
}

TEST_CASE("normalization constants are finite, positive, and deterministic") {
  for (int m = 1; m <= 6; ++m) {
    const double c = c_bound(m);
    CHECK(std::isfinite(c));
    CHECK(c >= 1.0);  // sup phi_m >= phi_m(1) = 1
  }
  CHECK(c_bound(3) == c_bound(3));
}

TEST_CASE("cm table round trips through json and caches by hash") {
  const auto t = CmTable::compute(6);
  CHECK(t.max_index == 6);
  CHECK(t.values.size() == 6);
  const auto u = CmTable::from_json(t.to_json());
  CHECK(u.values == t.values);
  CHECK(u.config_hash == t.config_hash);

  const std::string path = "cm_table_test_cache.json";
  std::remove(path.c_str());
  const auto a = CmTable::load_or_compute(path, 6);
  std::ifstream in1(path);
  std::stringstream s1;
  s1 << in1.rdbuf();
  const auto b = CmTable::load_or_compute(path, 6);
  std::ifstream in2(path);
  std::stringstream s2;
  s2 << in2.rdbuf();
  CHECK(a.values == b.values);
  CHECK(s1.str() == s2.str());
  CHECK_FALSE(s1.str().empty());
  std::remove(path.c_str());
}

TEST_CASE("deep-order machinery stays finite") {
  // Indices past the branch-and-bound window switch to the coarse analytic
  // ramp bound; the table must still be usable there.
  const double s = sup_ramp_deriv(20);
  CHECK(std::isfinite(s));
  CHECK(s > 0.0);
  const double c = c_bound(16);
  CHECK(std::isfinite(c));
  CHECK(c >= 1.0);
}
