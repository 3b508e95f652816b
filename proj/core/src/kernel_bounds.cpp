#include "convexlab/kernel_bounds.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "convexlab/bell.hpp"
#include "convexlab/errors.hpp"
#include "convexlab/hashing.hpp"

#include "json.hpp"

namespace cvx::bounds {

namespace {

using cvx::detail::next_up;

// Branch-and-bound orders beyond this use the Leibniz closed form instead;
// high-order interval Taylor enclosures on [1,2] get too wide to subdivide
// efficiently.
constexpr int kMaxBranchBoundOrder = 8;

// Interval wrapping grows with the derivative order, so past the first few
// orders extra subdivision buys little sharpness; the budget shrinks
// accordingly.  A loose sup only inflates normalization constants, never
// breaks soundness.
std::int64_t bb_budget(int order) {
  if (order <= 1) return 50000;
  if (order <= 3) return 20000;
  return 4000;
}

double run_bb(const std::function<Interval(const Box&)>& f, Interval domain, int order) {
  const auto cert = sup_abs_on_box(f, {domain}, 1e-9, 1e-4, bb_budget(order));
  return next_up(cert.upper);
}

}  // namespace

double sup_ramp_deriv(int j) {
  if (j < 0) throw PreconditionError("derivative order must be >= 0");
  if (j == 0) return 1.0;
  if (j > kMaxBoundOrder) throw CapabilityError("ramp bound order exceeds internal cap");
  static std::map<int, double> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(j);
    if (it != cache.end()) return it->second;
  }
  const double tau = kernels::tail_tau(j);
  const double tail = kernels::ramp_tail_bound(j);
  double interior;
  if (j <= kMaxBranchBoundOrder) {
    interior = run_bb(
        [j](const Box& b) { return kernels::ramp_deriv_enclosure(b[0], j); },
        Interval(tau, 1.0 - tau), j);
  } else {
    // Coarse analytic bound on [tau, 1-tau]: |sigma^{(k)}| <= A_k everywhere
    // and |w^{(i)}| <= 2 i! (1/tau)^{i+1}, combined through Faa di Bruno.
    // Loose, but only the normalization constants of deep series terms see
    // it, and a larger c_m still yields valid bounds.
    namespace dt = kernels::detail_tail;
    const auto a = dt::sigma_abs_coeff_bounds(j);
    const double u = 1.0 / tau;
    std::vector<Interval> w;
    for (int i = 1; i <= j; ++i)
      w.emplace_back(0.0, next_up(2.0 * dt::factorial_up(i) * dt::pow_up(u, i + 1)));
    Interval acc(0.0);
    for (int kk = 1; kk <= j; ++kk) {
      const Interval bell = bell_partial<Interval>(j, kk, w, Interval(0.0), Interval(1.0));
      acc += Interval(0.0, a[static_cast<size_t>(kk)]) * bell;
    }
    interior = acc.hi();
  }
  const double bound = std::max(tail, interior);
  std::lock_guard<std::mutex> lock(mtx);
  cache[j] = bound;
  return bound;
}

namespace {

// sup over [1,2] of |phi_m^{(j)}|, valid for any j.
double sup_phi_right(int m, int j) {
  static std::map<std::pair<int, int>, double> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({m, j});
    if (it != cache.end()) return it->second;
  }
  double right;
  if (j <= kMaxBranchBoundOrder) {
    right = run_bb(
        [m, j](const Box& b) { return kernels::phi_deriv_enclosure(m, b[0], j); },
        Interval(1.0, 2.0), j);
  } else {
    // Leibniz: |phi^{(j)}| <= sum_i C(j,i) sup|pow^{(i)}| sup|chi^{(j-i)}|,
    // the power derivative taking its sup at whichever endpoint wins.
    Interval acc(0.0);
    for (int i = 0; i <= j; ++i) {
      const Interval fi = abs(kernels::phi_power_factor<Interval>(m, i));
      const double e = static_cast<double>(m) + 0.5 - static_cast<double>(i);
      const Interval powsup = fi * exp(Interval(std::max(0.0, e)) * log(Interval(2.0)));
      const double chisup = (j == i) ? 1.0 : sup_ramp_deriv(j - i);
      acc += Interval(binomial(j, i)) * powsup * Interval(chisup);
    }
    right = acc.hi();
  }
  std::lock_guard<std::mutex> lock(mtx);
  cache[{m, j}] = right;
  return right;
}

}  // namespace

double sup_phi_deriv(int m, int j) {
  if (m < 1) throw PreconditionError("kernel index must be >= 1");
  if (j < 0 || j > m)
    throw PreconditionError("sup_phi_deriv needs 0 <= j <= m: phi_m^{(j)} is unbounded beyond");
  if (j > kMaxBoundOrder) throw CapabilityError("phi bound order exceeds internal cap");
  // On (0,1]: |phi^{(j)}| = |f_j| x^{m+1/2-j} with positive exponent, so the
  // sup over that piece is |f_j| at x = 1.
  const double left = abs(kernels::phi_power_factor<Interval>(m, j)).mag();
  return std::max(left, sup_phi_right(m, j));
}

double sup_phi_deriv_from(int m, int j, double delta) {
  if (m < 1) throw PreconditionError("kernel index must be >= 1");
  if (j < 0 || j > kMaxBoundOrder)
    throw CapabilityError("phi bound order exceeds internal cap");
  if (!(delta > 0.0)) throw PreconditionError("sup_phi_deriv_from needs delta > 0");
  double left = 0.0;
  if (delta < 1.0) {
    const Interval fi = abs(kernels::phi_power_factor<Interval>(m, j));
    const double e = static_cast<double>(m) + 0.5 - static_cast<double>(j);
    // |f_j| x^e on [delta,1] is monotone, so the sup is at an endpoint.
    left = (e >= 0.0) ? fi.mag()
                      : (fi * exp(Interval(e) * log(Interval(delta)))).mag();
  }
  return std::max(left, sup_phi_right(m, j));
}

double sup_h_deriv(int m, const MultiIndex& alpha) {
  if (m < 1) throw PreconditionError("kernel index must be >= 1");
  const int a = alpha[0], b = alpha[1];
  if (a == 0 && b == 0)
    throw PreconditionError("h_m itself is unbounded; only derivative bounds exist");
  if (a == 0 && b == 1) return 1.0;
  if (b == 0) {
    const Interval q = Interval(1.0) / Interval(static_cast<double>(m)) *
                       Interval(sup_ramp_deriv(a));
    return q.hi();
  }
  return 0.0;  // h_m is affine in y
}

namespace {

template <class PhiSup>
double faa_di_bruno_assemble(int m, const MultiIndex& alpha, PhiSup&& phi_sup) {
  const int a = alpha[0], b = alpha[1];
  if (a < 0 || b < 0 || alpha[2] != 0) throw PreconditionError("alpha must be a 2d multi-index");
  if (a == 0) return phi_sup(b);
  // d_y^b (phi o h) = phi^{(b)} o h since d_y h = 1; then Faa di Bruno in x.
  std::vector<Interval> q;
  for (int i = 1; i <= a; ++i)
    q.emplace_back(0.0, sup_h_deriv(m, MultiIndex{{i, 0, 0}}));
  Interval acc(0.0);
  for (int k = 1; k <= a; ++k) {
    const Interval bell = bell_partial<Interval>(a, k, q, Interval(0.0), Interval(1.0));
    acc += Interval(0.0, phi_sup(b + k)) * bell;
  }
  return acc.hi();
}

}  // namespace

double term_deriv_bound(int m, const MultiIndex& alpha) {
  if (alpha[0] + alpha[1] > m)
    throw PreconditionError("term derivative bound only exists for |alpha| <= m");
  return faa_di_bruno_assemble(m, alpha, [m](int j) { return sup_phi_deriv(m, j); });
}

double term_deriv_bound_from(int m, const MultiIndex& alpha, double delta) {
  return faa_di_bruno_assemble(m, alpha,
                               [m, delta](int j) { return sup_phi_deriv_from(m, j, delta); });
}

double c_bound(int m) {
  if (m < 1) throw PreconditionError("kernel index must be >= 1");
  double c = 0.0;
  for (int a = 0; a <= m; ++a)
    for (int b = 0; a + b <= m; ++b)
      c = std::max(c, term_deriv_bound(m, MultiIndex{{a, b, 0}}));
  return c;
}

double CmTable::c(int m) const {
  if (m < 1 || m > max_index) throw PreconditionError("kernel index outside table range");
  return values[static_cast<size_t>(m - 1)];
}

std::string CmTable::canonical_config(int max_index, const kernels::KernelConfig& cfg) {
  std::ostringstream os;
  os << "cm-table/v1;bridge=" << cfg.bridge << ";cutoff=" << cfg.cutoff
     << ";max_index=" << max_index << ";max_order=" << kMaxBoundOrder;
  return os.str();
}

CmTable CmTable::compute(int max_index, const kernels::KernelConfig& cfg) {
  cfg.validate();
  if (max_index < 1 || max_index > kMaxBoundOrder)
    throw CapabilityError("cm table index outside supported range");
  CmTable t;
  t.max_index = max_index;
  t.config_hash = fnv1a64_hex(canonical_config(max_index, cfg));
  for (int m = 1; m <= max_index; ++m) t.values.push_back(c_bound(m));
  return t;
}

std::string CmTable::to_json() const {
  nlohmann::json j;
  j["max_index"] = max_index;
  j["config_hash"] = config_hash;
  j["values"] = values;
  return j.dump(2) + "\n";
}

CmTable CmTable::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  CmTable t;
  t.max_index = j.at("max_index").get<int>();
  t.config_hash = j.at("config_hash").get<std::string>();
  t.values = j.at("values").get<std::vector<double>>();
  if (static_cast<int>(t.values.size()) != t.max_index)
    throw PreconditionError("cm table is inconsistent");
  return t;
}

CmTable CmTable::load_or_compute(const std::string& path, int max_index,
                                 const kernels::KernelConfig& cfg) {
  const std::string want = fnv1a64_hex(canonical_config(max_index, cfg));
  {
    std::ifstream in(path);
    if (in) {
      std::ostringstream buf;
      buf << in.rdbuf();
      try {
        CmTable t = from_json(buf.str());
        if (t.config_hash == want && t.max_index == max_index) return t;
      } catch (const std::exception&) {
        // fall through and recompute
      }
    }
  }
  CmTable t = compute(max_index, cfg);
  std::ofstream out(path);
  if (out) out << t.to_json();
  return t;
}

}  // namespace cvx::bounds
