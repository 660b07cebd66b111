#include <random>

#include "doctest.h"
#include "gse/faults.hpp"
#include "gse/gadgets.hpp"
#include "oracles.hpp"

using namespace gse;

namespace {

Encoding enc44() {
  static Encoding e = Encoding::build(InteractionGraph::planar(4, 4));
  return e;
}

}  // namespace

TEST_CASE("controlled-Pauli conjugation matches the unitary oracle") {
  const char letters[3] = {'X', 'Z', 'Y'};
  for (char cp : letters)
    for (char tp : letters) {
      Gate g = make_cp(pauli_code(cp), 0, pauli_code(tp), 1);
      oracle::Mat U = oracle::cp_matrix(cp, tp);
      for (int code = 0; code < 16; ++code) {
        PauliOp e(2);
        e.set_letter(0, uint8_t(code & 3));
        e.set_letter(1, uint8_t((code >> 2) & 3));
        PauliOp f = e;
        bool tr = false;
        conjugate_through(g, f, tr);
        CHECK_FALSE(tr);
        // U E U (U is an involution) must equal the propagated frame.
        auto expect = oracle::matmul(oracle::matmul(U, oracle::to_matrix(e), 4), U, 4);
        CHECK(oracle::approx_equal(expect, oracle::to_matrix(f), 1e-9));
      }
    }
}

TEST_CASE("commutation rule examples") {
  // X before an X-controlled-X passes unchanged.
  PauliOp f = PauliOp::parse("XI");
  bool tr = false;
  conjugate_through(make_cp(P_X, 0, P_X, 1), f, tr);
  CHECK(f.str() == "XI");
  // Z on the target of a Y-controlled-X appends the control Pauli Y.
  f = PauliOp::parse("IZ");
  conjugate_through(make_cp(P_Y, 0, P_X, 1), f, tr);
  CHECK(f.letter(0) == P_Y);
  CHECK(f.letter(1) == P_Z);
}

TEST_CASE("evolve gates pass anticommuting errors with time reversal") {
  bool tr = false;
  PauliOp f = PauliOp::parse("X");
  conjugate_through(make_ev1(P_Z, 0), f, tr);
  CHECK(f.str() == "X");
  CHECK(tr);
  tr = false;
  f = PauliOp::parse("Z");
  conjugate_through(make_ev1(P_Z, 0), f, tr);
  CHECK_FALSE(tr);
  // Two-qubit evolution: an error anticommuting on exactly one factor reverses t.
  tr = false;
  f = PauliOp::parse("XI");
  conjugate_through(make_ev2(P_Z, 0, P_Z, 1), f, tr);
  CHECK(tr);
  tr = false;
  f = PauliOp::parse("XX");
  conjugate_through(make_ev2(P_Z, 0, P_Z, 1), f, tr);
  CHECK_FALSE(tr);  // anticommutes on both factors, commutes overall
}

TEST_CASE("propagation is multiplicative up to phase") {
  Encoding enc = enc44();
  Circuit c = syndrome_measurement_circuit(enc, enc.square_loop_index(0, 1), Connectivity::reduced);
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    PauliOp a(c.n_qubits), b(c.n_qubits);
    for (int q = 0; q < c.n_qubits; ++q) {
      a.set_letter(q, uint8_t(rng() % 4));
      b.set_letter(q, uint8_t(rng() % 4));
    }
    bool tr = false;
    PauliOp fa = conjugate_through_circuit(c, a, tr);
    PauliOp fb = conjugate_through_circuit(c, b, tr);
    PauliOp fab = conjugate_through_circuit(c, multiply(a, b), tr);
    CHECK(fab.same_letters(multiply(fa, fb)));
  }
}

TEST_CASE("syndrome gadget fault propagation follows the worked cases") {
  Encoding enc = enc44();
  int li = enc.square_loop_index(1, 1);
  Circuit c = syndrome_measurement_circuit(enc, li, Connectivity::full);
  int anc = enc.ancilla(li);

  SUBCASE("Z on the ancilla right after preparation is erased by |0>") {
    FaultOutcome out = propagate(c, {0, false, anc, P_Z, false}, enc);
    CHECK(out.verdict == Verdict::benign);
    CHECK(out.residual_data.is_identity());
  }
  SUBCASE("X on the ancilla is caught by the Z measurement") {
    for (int g = 0; g < 6; ++g) {
      FaultOutcome out = propagate(c, {g, false, anc, P_X, false}, enc);
      CHECK(out.verdict == Verdict::detected_by_measurement);
    }
  }
  SUBCASE("Z on the ancilla mid-circuit propagates a loop suffix, detectable later") {
    // After the second coupling the residue is the IIIIYXZI-family suffix.
    FaultOutcome out = propagate(c, {2, false, anc, P_Z, false}, enc);
    CHECK(out.verdict == Verdict::detectable_later);
    CHECK(out.residual_data.weight() == 4);
    FaultOutcome last = propagate(c, {5, false, anc, P_Z, false}, enc);
    CHECK(last.verdict == Verdict::detectable_later);
    CHECK(last.residual_data.weight() == 1);
  }
  SUBCASE("faults after the final gate classify like the raw Pauli") {
    int q = enc.qubit(5, 0);
    for (uint8_t p : {P_X, P_Y, P_Z}) {
      FaultOutcome out = propagate(c, {int(c.gates.size()) - 1, false, q, p, false}, enc);
      PauliOp raw = PauliOp::single(enc.n_data(), q, p);
      CHECK(out.ancilla_flips.empty());
      CHECK(out.residual_data.same_letters(raw));
      CHECK((out.verdict == Verdict::detectable_later) ==
            (enc.classify(raw) == PauliClass::detectable));
    }
  }
}

TEST_CASE("B_j measurement gadget has no undetectable faults") {
  Encoding enc = enc44();
  for (Connectivity conn : {Connectivity::full, Connectivity::reduced})
    for (int v : {0, 5, 10, 15}) {
      Circuit c = bj_measurement_circuit(enc, v, conn);
      auto res = enumerate_single_faults(c, enc);
      CHECK(res.summary.count(Verdict::undetectable_logical) == 0);
      CHECK(res.summary.count(Verdict::evolved_operator_exception) == 0);
    }
}

TEST_CASE("syndrome gadgets have no undetectable faults, either connectivity") {
  Encoding enc = enc44();
  for (Connectivity conn : {Connectivity::full, Connectivity::reduced})
    for (int li = 0; li < enc.n_loops(); ++li) {
      Circuit c = syndrome_measurement_circuit(enc, li, conn);
      auto res = enumerate_single_faults(c, enc);
      CHECK(res.summary.count(Verdict::undetectable_logical) == 0);
    }
}

TEST_CASE("plain evolution gadgets expose the evolved operator only at the core") {
  Encoding enc = enc44();
  int vedge = enc.graph().straight_edges(EdgeKind::vertical)[5];
  TermSpec t{TermKind::BA, vedge, -1};
  EvolutionPlan plan = plan_protected_evolution(enc, t, false);
  Circuit c = evolution_circuit(enc, plan, Connectivity::full);
  auto res = enumerate_single_faults(c, enc);
  CHECK(res.summary.count(Verdict::undetectable_logical) == 0);
  int exc = res.summary.count(Verdict::evolved_operator_exception);
  CHECK(exc > 0);
  REQUIRE(c.central_evolve_indices.size() == 1);
  int ev = c.central_evolve_indices[0];
  for (const FaultEvent& e : res.summary.exception_events) {
    bool adjacent = (!e.before && (e.gate_index == ev || e.gate_index == ev - 1));
    CHECK(adjacent);
  }
}

TEST_CASE("native evolution gadgets remove the exception entirely") {
  Encoding enc = enc44();
  int vedge = enc.graph().straight_edges(EdgeKind::vertical)[5];
  int hedge = enc.graph().straight_edges(EdgeKind::horizontal)[4];
  for (TermKind k : {TermKind::BB, TermKind::BA, TermKind::AB})
    for (int e : {vedge, hedge}) {
      TermSpec t{k, e, -1};
      EvolutionPlan plan = plan_protected_evolution(enc, t, true);
      for (Connectivity conn : {Connectivity::full, Connectivity::reduced}) {
        Circuit c = evolution_circuit(enc, plan, conn);
        auto res = enumerate_single_faults(c, enc);
        CHECK(res.summary.count(Verdict::undetectable_logical) == 0);
        CHECK(res.summary.count(Verdict::evolved_operator_exception) == 0);
      }
    }
}

TEST_CASE("swap QQ faults never classify logical in the reduced evolution") {
  Encoding enc = enc44();
  for (int e : {enc.graph().straight_edges(EdgeKind::vertical)[5],
                enc.graph().straight_edges(EdgeKind::horizontal)[0]}) {
    TermSpec t{TermKind::BB, e, -1};
    EvolutionPlan plan = plan_protected_evolution(enc, t, true);
    Circuit c = evolution_circuit(enc, plan, Connectivity::reduced);
    for (int i = 0; i < int(c.gates.size()); ++i) {
      if (c.gates[i].kind != GateKind::swap_gate) continue;
      for (uint8_t p : {P_X, P_Y, P_Z}) {
        FaultOutcome out = propagate(c, {i, false, c.gates[i].q0, p, true}, enc);
        CHECK(out.verdict != Verdict::undetectable_logical);
        CHECK(out.verdict != Verdict::evolved_operator_exception);
      }
    }
  }
}

TEST_CASE("monte carlo: deterministic, exact at s=1, faithful fault rate") {
  Encoding enc = enc44();
  Circuit c = error_detected_vqe_circuit(enc, Connectivity::reduced);
  MonteCarloOptions opts;
  opts.result_measurements = c.result_measurements;

  SUBCASE("s = 1 leaves every trial clean") {
    DetectionStats st = monte_carlo(c, enc, 1.0, 500, 42, opts);
    CHECK(st.detected == 0);
    CHECK(st.undetected_faulty == 0);
    CHECK(st.undetected_correct == 500);
  }
  SUBCASE("identical seeds give identical tallies across thread counts") {
    opts.threads = 1;
    DetectionStats a = monte_carlo(c, enc, 0.9999, 4000, 7, opts);
    opts.threads = 4;
    DetectionStats b = monte_carlo(c, enc, 0.9999, 4000, 7, opts);
    CHECK(a.detected == b.detected);
    CHECK(a.undetected_correct == b.undetected_correct);
    CHECK(a.undetected_faulty == b.undetected_faulty);
    CHECK(a.fault_trials == b.fault_trials);
    DetectionStats other = monte_carlo(c, enc, 0.9999, 4000, 8, opts);
    CHECK(a.detected != other.detected);  // the seed matters
  }
  SUBCASE("no-fault fraction tracks s^{2C}") {
    double s = 0.9999;
    long n = 20000;
    opts.threads = 4;
    DetectionStats st = monte_carlo(c, enc, s, n, 3, opts);
    long C = c.count_resources().two_qubit_gates;
    double expect = std::exp(2.0 * double(C) * std::log(s));
    double hw = DetectionStats::binom_halfwidth3(expect, n);
    CHECK(std::abs(st.no_fault_fraction() - expect) < hw);
  }
}
