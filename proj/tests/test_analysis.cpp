#include "doctest.h"
#include "gse/analysis.hpp"

using namespace gse::analysis;

TEST_CASE("(c,d) convention reproduces the tabulated gate counts") {
  CHECK(cd_for(4, 4) == std::pair<long, long>{2458, 234});
  CHECK(cd_for(8, 8) == std::pair<long, long>{11050, 906});
  CHECK(cd_for(16, 16) == std::pair<long, long>{46666, 3594});
}

TEST_CASE("cost table columns") {
  auto r4 = cost_table(4, 4, false);
  CHECK(r4.zero_gates == 170);
  CHECK(r4.zero_depth == 10);
  CHECK(r4.ansatz_gates_table == 1144);
  CHECK(r4.ansatz_gates_formula == 991);
  CHECK(r4.ansatz_gates_sum == 952);
  CHECK(r4.ansatz_depth == 67);
  CHECK(r4.vqe_gates == 2458);
  CHECK(r4.vqe_depth == 144);
  CHECK(r4.ed_gates == 2692);
  CHECK(r4.ed_depth == 158);

  auto r8 = cost_table(8, 8, false);
  CHECK(r8.zero_gates == 650);
  CHECK(r8.ansatz_gates_table == 5200);
  CHECK(r8.vqe_gates == 11050);
  CHECK(r8.ed_gates == 11956);

  auto r16 = cost_table(16, 16, false);
  CHECK(r16.zero_gates == 2570);
  CHECK(r16.ansatz_gates_table == 22048);
  CHECK(r16.vqe_gates == 46666);
  CHECK(r16.ed_gates == 50260);

  for (auto r : {r4, r8, r16})
    CHECK(r.ed_gates - r.vqe_gates == r.zero_gates + 4L * r.m * r.n);
}

TEST_CASE("built cost row counts the constructed circuits") {
  auto r = cost_table(4, 4, true);
  CHECK(r.zero_depth == 10);
  CHECK(r.zero_depth_2q == 8);
  CHECK(r.ansatz_gates_built == 784);
}

TEST_CASE("p_g, p_d, p_g_ed at s = 0.99999") {
  const double s = 0.99999;
  CHECK(p_g(2458, s) == doctest::Approx(0.952029).epsilon(1e-6));
  CHECK(p_g(1, 1.0) == 1.0);
  // c counts whole-circuit two-qubit gates (the 16x16 VQE total), not slots.
  CHECK(p_g(46666, s) == doctest::Approx(0.393244).epsilon(1e-6));

  CHECK(p_d(2458, 234, s) == doctest::Approx(0.046584).epsilon(2e-5));
  CHECK(p_d(2458, 234, 1.0) == 0.0);
  CHECK(p_d(11050, 906, s) == doctest::Approx(0.173999).epsilon(2e-5));
  CHECK(p_d(46666, 3594, s) == doctest::Approx(0.341570).epsilon(2e-5));

  CHECK(p_g_ed(2458, 234, s) == doctest::Approx(0.993882).epsilon(1e-5));
  CHECK(p_g_ed(2458, 234, 1.0) == 1.0);
  CHECK(p_g_ed(11050, 906, s) == doctest::Approx(0.953170).epsilon(1e-5));
  CHECK(p_g_ed(46666, 3594, s) == doctest::Approx(0.555822).epsilon(1e-5));
}

TEST_CASE("improvement thresholds from the derivation-line inequality") {
  CHECK(improvement_threshold_s(2458, 234) == doctest::Approx(0.999544).epsilon(5e-6));
  CHECK(improvement_threshold_s(11050, 906) == doctest::Approx(0.999891).epsilon(5e-6));
  CHECK(improvement_threshold_s(46666, 3594) == doctest::Approx(0.999974).epsilon(5e-6));
  // The companion p_g column is evaluated at the six-decimal threshold.
  CHECK(success_probability_row(4, 4).p_g_at_threshold ==
        doctest::Approx(0.106224).epsilon(1e-5));
  CHECK(success_probability_row(8, 8).p_g_at_threshold ==
        doctest::Approx(0.089902).epsilon(1e-5));
  CHECK(success_probability_row(16, 16).p_g_at_threshold ==
        doctest::Approx(0.088331).epsilon(1e-5));
}

TEST_CASE("boxed and derivation-line forms are both evaluated") {
  auto f = improvement_threshold_forms(2458, 234, 0.9999);
  CHECK(f.derivation_line != f.boxed);
}

TEST_CASE("p_a estimates") {
  CHECK(p_a_estimate(4) == doctest::Approx(47.0 / 48.0).epsilon(1e-12));
  CHECK(p_a_estimate(8) == doctest::Approx(191.0 / 192.0).epsilon(1e-12));
  CHECK(p_a_estimate(16) == doctest::Approx(767.0 / 768.0).epsilon(1e-12));
}

TEST_CASE("arbitrary-error improvement thresholds") {
  CHECK(arbitrary_error_threshold_s(2458, 234, 47.0 / 48) ==
        doctest::Approx(0.991762).epsilon(5e-6));
  CHECK(arbitrary_error_threshold_s(11050, 906, 191.0 / 192) ==
        doctest::Approx(0.997103).epsilon(5e-6));
  CHECK(arbitrary_error_threshold_s(46666, 3594, 767.0 / 768) ==
        doctest::Approx(0.999076).epsilon(5e-6));
}

TEST_CASE("required s for 95% post-selected accuracy") {
  CHECK(required_s_for_target(2458, 234, 47.0 / 48, 0.95) ==
        doctest::Approx(0.999760).epsilon(5e-6));
  CHECK(required_s_for_target(11050, 906, 191.0 / 192, 0.95) ==
        doctest::Approx(0.999899).epsilon(5e-6));
  CHECK(required_s_for_target(46666, 3594, 767.0 / 768, 0.95) ==
        doctest::Approx(0.999963).epsilon(5e-6));
}

TEST_CASE("second-round budgets, all twelve table entries") {
  struct Row {
    int m;
    double s;
    long expect;
  };
  const Row rows[] = {{4, 0.99, 192},      {4, 0.999, 1934},   {4, 0.9999, 19355},
                      {4, 0.99999, 193559}, {8, 0.99, 261},     {8, 0.999, 2627},
                      {8, 0.9999, 26286},   {8, 0.99999, 262873}, {16, 0.99, 330},
                      {16, 0.999, 3320},    {16, 0.9999, 33217},  {16, 0.99999, 332187}};
  for (const Row& r : rows)
    CHECK(second_round_budget(p_a_estimate(r.m), r.s) == r.expect);
}

TEST_CASE("monotonicity and bracket invariance") {
  const double s = 0.9999;
  CHECK(p_g(2458, s) > p_g(11050, s));
  CHECK(p_g(11050, s) > p_g(46666, s));
  double t1 = improvement_threshold_s(2458, 234);
  double t2 = improvement_threshold_s(11050, 234);
  CHECK(t2 > t1);  // more computation needs better gates
  // Bisection is insensitive to the bracket within (0.9, 1).
  auto f = [&](double x) { return improvement_threshold_forms(2458, 234, x).derivation_line; };
  double a = bisect(f, 0.9, 1.0 - 1e-12);
  double b = bisect(f, 0.99, 1.0 - 1e-10);
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
  CHECK(a == doctest::Approx(t1).epsilon(1e-9));
}

TEST_CASE("budget rows carry the d column 234/906/3594") {
  CHECK(budget_rows(4, 4).front().d == 234);
  CHECK(budget_rows(8, 8).front().d == 906);
  CHECK(budget_rows(16, 16).front().d == 3594);
  CHECK(budget_rows(4, 4).size() == 4);
}
