#include "gse/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "gse/encoding.hpp"
#include "gse/gadgets.hpp"

namespace gse {
namespace analysis {

namespace {
// s^e via exp(e ln s); integer exponents here reach ~10^5.
double powxs(double s, double e) { return std::exp(e * std::log(s)); }
}  // namespace

double p_g(double c, double s) { return powxs(s, 2 * c); }

double p_e(double c, double d, double s) { return powxs(s, 2 * c) * (1.0 - powxs(s, 2 * d)); }

double p_d(double c, double d, double s) {
  return 2.0 * c * (1.0 - s) * powxs(s, 2 * c + 2 * d - 1);
}

double p_g_ed(double c, double d, double s) {
  double denom = 1.0 - p_d(c, d, s);
  if (denom <= 0.0) throw std::domain_error("p_g_ed: p_d reaches 1");
  return (p_g(c, s) - p_e(c, d, s)) / denom;
}

double p_a_estimate(int m) { return 1.0 - 1.0 / (3.0 * double(m) * double(m)); }

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0) == (fhi < 0)) throw std::invalid_argument("bisect: no sign change in bracket");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ThresholdForms improvement_threshold_forms(double c, double d, double s) {
  ThresholdForms f;
  f.derivation_line = 2 * c * powxs(s, 2 * c + 2 * d - 1) * (1 - s) + powxs(s, 2 * d) - 1;
  f.boxed = -2 * c * powxs(s, 2 * c + 2 * d) + powxs(s, 2 * c + 2 * d + 1) + powxs(s, 2 * d) - 1;
  f.agree_in_sign = (f.derivation_line > 0) == (f.boxed > 0);
  return f;
}

double improvement_threshold_s(double c, double d) {
  if (c <= 0 || d <= 0) throw std::invalid_argument("improvement_threshold_s: need c,d > 0");
  auto f = [&](double s) { return improvement_threshold_forms(c, d, s).derivation_line; };
  return bisect(f, 0.5, 1.0 - 1e-12, 1e-12);
}

double arbitrary_error_threshold_s(double c, double d, double p_a) {
  auto f = [&](double s) { return powxs(s, 2 * d) - p_a * powxs(s, 2 * c) + p_a - 1.0; };
  return bisect(f, 0.5, 1.0 - 1e-9, 1e-12);
}

double required_s_for_target(double c, double d, double p_a, double target) {
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument("required_s_for_target: target in (0,1)");
  // From s^{2(c+d)} / (s^{2(c+d)} + (1-s^{2c})(1-p_a)) > target.
  auto f = [&](double s) {
    return powxs(s, 2 * (c + d)) * (1.0 - target) +
           target * (1.0 - p_a) * (powxs(s, 2 * c) - 1.0);
  };
  return bisect(f, 0.5, 1.0 - 1e-12, 1e-12);
}

long second_round_budget(double p_a, double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("second_round_budget: s in (0,1)");
  return long(std::floor(std::log(1.0 - p_a) / (2.0 * std::log(s))));
}

CostRow cost_table(int m, int n, bool build_circuits) {
  CostRow r;
  r.m = m;
  r.n = n;
  long squares = long(m - 1) * (n - 1);
  long bigons = m + n;
  long edges = long(m) * (n - 1) + long(n) * (m - 1);
  r.zero_gates = 10 * (squares + bigons);
  r.zero_depth = 10;
  r.zero_depth_2q = 8;
  r.ansatz_gates_table = 13 * (long(m) * n + 3 * edges);
  r.ansatz_gates_formula = 79 * long(m) * n - 39 * (long(m) + n - 1);
  r.ansatz_gates_sum = long(m) * n + 39 * edges;
  r.ansatz_depth = 1 + 11 * (2 + 4);
  r.vqe_gates = r.zero_gates + 2 * r.ansatz_gates_table;
  r.vqe_depth = r.zero_depth + 2 * r.ansatz_depth;
  r.ed_gates = r.vqe_gates + r.zero_gates + 4 * long(m) * n;
  r.ed_depth = r.vqe_depth + 4 + r.zero_depth;
  if (build_circuits) {
    Encoding enc = Encoding::build(InteractionGraph::planar(m, n));
    Circuit ansatz = hva_schedule(enc, Connectivity::reduced, hva_terms(enc).size());
    r.ansatz_gates_built = ansatz.count_resources().two_qubit_gates;
    Circuit round = syndrome_round(enc, Connectivity::reduced);
    Resources rr = round.count_resources();
    r.zero_depth = rr.full_depth;  // expected 10: preps, eight columns, readout
    r.zero_depth_2q = rr.depth;    // the "at most eight" claim
  }
  return r;
}

std::pair<long, long> cd_for(int m, int n) {
  CostRow r = cost_table(m, n, false);
  return {r.vqe_gates, r.ed_gates - r.vqe_gates};
}

ThresholdRow success_probability_row(int m, int n) {
  auto [c, d] = cd_for(m, n);
  ThresholdRow r;
  r.m = m;
  r.n = n;
  r.c = double(c);
  r.d = double(d);
  r.threshold_s = improvement_threshold_s(r.c, r.d);
  // The companion column is evaluated at the six-decimal printed threshold.
  r.p_g_at_threshold = p_g(r.c, std::round(r.threshold_s * 1e6) / 1e6);
  const double s = 0.99999;
  r.pg = p_g(r.c, s);
  r.pd = p_d(r.c, r.d, s);
  r.pged = p_g_ed(r.c, r.d, s);
  return r;
}

OptimisticRow optimistic_row(int m, int n) {
  auto [c, d] = cd_for(m, n);
  OptimisticRow r;
  r.m = m;
  r.n = n;
  r.p_a = p_a_estimate(m);
  r.improvement_s = arbitrary_error_threshold_s(double(c), double(d), r.p_a);
  r.p_g_at_improvement = p_g(double(c), r.improvement_s);
  r.required_s = required_s_for_target(double(c), double(d), r.p_a, 0.95);
  r.p_g_at_required = p_g(double(c + d), r.required_s);
  return r;
}

std::vector<BudgetRow> budget_rows(int m, int n) {
  auto [c, d] = cd_for(m, n);
  (void)c;
  std::vector<BudgetRow> rows;
  for (double s : {0.99, 0.999, 0.9999, 0.99999}) {
    BudgetRow r;
    r.m = m;
    r.n = n;
    r.p_a = p_a_estimate(m);
    r.d = d;
    r.s = s;
    r.d_b = second_round_budget(r.p_a, s);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace analysis
}  // namespace gse
