#include "gse/faults.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace gse {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::benign: return "benign";
    case Verdict::detected_by_measurement: return "detected_by_measurement";
    case Verdict::detectable_later: return "detectable_later";
    case Verdict::undetectable_logical: return "undetectable_logical";
    case Verdict::evolved_operator_exception: return "evolved_operator_exception";
  }
  return "?";
}

void conjugate_through(const Gate& g, PauliOp& f, bool& time_reversal) {
  switch (g.kind) {
    case GateKind::prep_zero:
      f.clear_qubit(g.q0);
      break;
    case GateKind::measure_z:
      break;  // flip bookkeeping is the caller's job
    case GateKind::hadamard:
      f.apply_hadamard(g.q0);
      break;
    case GateKind::s_gate:
      f.apply_s(g.q0);
      break;
    case GateKind::pauli_gate:
      if (f.anticommutes_at(g.q0, g.p0)) f.add_phase(2);
      break;
    case GateKind::swap_gate:
      f.swap_qubits(g.q0, g.q1);
      break;
    case GateKind::cp: {
      bool a = f.anticommutes_at(g.q0, g.p0);
      bool b = f.anticommutes_at(g.q1, g.p1);
      if (a) f.mul_single(g.q1, g.p1);
      if (b) f.mul_single(g.q0, g.p0);
      if (a && b) f.add_phase(2);
      break;
    }
    case GateKind::evolve_1:
      if (f.anticommutes_at(g.q0, g.p0)) time_reversal = true;
      break;
    case GateKind::evolve_2:
      if (f.anticommutes_at(g.q0, g.p0) != f.anticommutes_at(g.q1, g.p1)) time_reversal = true;
      break;
  }
}

PauliOp conjugate_through_circuit(const Circuit& c, const PauliOp& p, bool& time_reversal) {
  PauliOp f = p;
  for (const Gate& g : c.gates) conjugate_through(g, f, time_reversal);
  return f;
}

namespace {

// Walks a circuit maintaining the Pauli frame, measurement flips, and the
// per-wire "known computational state" marks used to absorb trivial
// injections on freshly prepared or measured qubits.
struct FrameWalker {
  const Circuit& c;
  PauliOp frame;
  std::vector<uint8_t> pristine;
  std::vector<int> flips;
  bool time_reversal = false;

  explicit FrameWalker(const Circuit& circuit)
      : c(circuit), frame(circuit.n_qubits), pristine(circuit.n_qubits, 0) {}

  void inject(int q, uint8_t p) {
    if (pristine[q]) {
      if (p == P_Z) return;       // Z acts trivially on |0>/|1>
      if (p == P_Y) p = P_X;      // Y differs from X by a phase there
    }
    frame.mul_single(std::size_t(q), p);
  }

  void step(const Gate& g) {
    switch (g.kind) {
      case GateKind::prep_zero:
        frame.clear_qubit(g.q0);
        pristine[g.q0] = 1;
        return;
      case GateKind::measure_z: {
        uint8_t l = frame.letter(g.q0);
        if (l == P_X || l == P_Y) flips.push_back(g.q0);
        frame.clear_qubit(g.q0);
        pristine[g.q0] = 1;
        return;
      }
      case GateKind::swap_gate:
        std::swap(pristine[g.q0], pristine[g.q1]);
        break;
      case GateKind::hadamard:
      case GateKind::cp:
      case GateKind::evolve_1:
      case GateKind::evolve_2:
        pristine[g.q0] = 0;
        if (g.q1 >= 0) pristine[g.q1] = 0;
        break;
      case GateKind::s_gate:
      case GateKind::pauli_gate:
        break;  // computational states stay computational
    }
    conjugate_through(g, frame, time_reversal);
  }

  PauliOp residual_data() const {
    std::vector<std::size_t> qs(c.n_data);
    for (int q = 0; q < c.n_data; ++q) qs[q] = std::size_t(q);
    PauliOp r = frame.restricted(qs);
    r.set_phase(0);
    return r;
  }
};

Verdict classify_outcome(const Circuit& c, const Encoding& enc, const PauliOp& residual,
                         const std::vector<int>& flips) {
  if (!flips.empty()) return Verdict::detected_by_measurement;
  switch (enc.classify(residual)) {
    case PauliClass::trivial:
    case PauliClass::stabilizer:
      return Verdict::benign;
    case PauliClass::detectable:
      return Verdict::detectable_later;
    case PauliClass::logical:
      if (c.evolved_op && residual.same_letters(*c.evolved_op))
        return Verdict::evolved_operator_exception;
      return Verdict::undetectable_logical;
  }
  return Verdict::benign;
}

}  // namespace

FaultOutcome propagate(const Circuit& c, const FaultEvent& ev, const Encoding& enc) {
  if (ev.gate_index < 0 || ev.gate_index > int(c.gates.size()))
    throw std::invalid_argument("fault event gate index out of range");
  FrameWalker w(c);
  for (int i = 0; i < int(c.gates.size()); ++i) {
    if (ev.before && ev.gate_index == i) {
      w.inject(ev.qubit, ev.pauli);
      if (ev.swap_qq) w.inject(c.gates[i].q1 == ev.qubit ? c.gates[i].q0 : c.gates[i].q1, ev.pauli);
    }
    w.step(c.gates[i]);
    if (!ev.before && ev.gate_index == i) {
      w.inject(ev.qubit, ev.pauli);
      if (ev.swap_qq) w.inject(c.gates[i].q1 == ev.qubit ? c.gates[i].q0 : c.gates[i].q1, ev.pauli);
    }
  }
  FaultOutcome out;
  out.event = ev;
  out.residual_data = w.residual_data();
  out.ancilla_flips = w.flips;
  out.time_reversal = w.time_reversal;
  out.verdict = classify_outcome(c, enc, out.residual_data, out.ancilla_flips);
  return out;
}

EnumerationResult enumerate_single_faults(const Circuit& c, const Encoding& enc,
                                          const EnumerateOptions& opts) {
  EnumerationResult res;
  auto touched = c.touched_qubits();
  auto run = [&](const FaultEvent& ev) {
    FaultOutcome out = propagate(c, ev, enc);
    res.summary.counts[out.verdict]++;
    res.summary.total++;
    if (out.time_reversal) res.summary.time_reversals++;
    if (out.verdict == Verdict::undetectable_logical) res.summary.undetectable_events.push_back(ev);
    if (out.verdict == Verdict::evolved_operator_exception)
      res.summary.exception_events.push_back(ev);
    res.outcomes.push_back(std::move(out));
  };
  for (std::size_t q : touched)
    for (uint8_t p : {P_X, P_Y, P_Z}) run({0, true, int(q), p, false});
  for (int i = 0; i < int(c.gates.size()); ++i) {
    for (std::size_t q : touched)
      for (uint8_t p : {P_X, P_Y, P_Z}) run({i, false, int(q), p, false});
    if (opts.swap_qq_faults && c.gates[i].kind == GateKind::swap_gate)
      for (uint8_t p : {P_X, P_Y, P_Z}) run({i, false, c.gates[i].q0, p, true});
  }
  return res;
}

namespace {

struct SplitMix64 {
  uint64_t s;
  uint64_t next() {
    s += 0x9E3779B97F4A7C15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

// Counter-based per-trial stream: identical results for any parallel split.
struct TrialRng {
  SplitMix64 g;
  TrialRng(uint64_t seed, uint64_t trial) {
    SplitMix64 h{seed};
    uint64_t a = h.next();
    h.s = a ^ (trial * 0xD1B54A32D192ED03ull);
    g.s = h.next();
  }
  double uniform() { return double(g.next() >> 11) * 0x1.0p-53; }
  uint8_t pauli() { return uint8_t(1 + g.next() % 3); }  // X=1, Z=2, Y=3 uniformly
};

}  // namespace

double DetectionStats::no_fault_fraction() const {
  return trials == 0 ? 0.0 : double(trials - fault_trials) / double(trials);
}

double DetectionStats::detected_given_faulty() const {
  long faulty = detected + undetected_faulty;
  return faulty == 0 ? 0.0 : double(detected) / double(faulty);
}

double DetectionStats::detected_given_injection() const {
  return fault_trials == 0 ? 0.0 : double(detected) / double(fault_trials);
}

double DetectionStats::binom_halfwidth3(double p_hat, long n) {
  if (n <= 0) return 0.0;
  return 3.0 * std::sqrt(std::max(p_hat * (1.0 - p_hat), 1e-12) / double(n));
}

DetectionStats monte_carlo(const Circuit& c, const Encoding& enc, double s, long trials,
                           uint64_t seed, const MonteCarloOptions& opts) {
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("monte_carlo: s must be in (0,1]");
  std::vector<uint8_t> is_result(c.gates.size(), 0);
  for (int gi : opts.result_measurements) is_result[gi] = 1;

  auto run_range = [&](long lo, long hi, DetectionStats& st) {
    for (long t = lo; t < hi; ++t) {
      TrialRng rng(seed, uint64_t(t));
      FrameWalker w(c);
      bool any_fault = false;
      bool check_flip = false, result_flip = false;
      std::size_t flips_seen = 0;
      for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
        const Gate& g = c.gates[gi];
        w.step(g);
        if (g.kind == GateKind::measure_z && w.flips.size() > flips_seen) {
          flips_seen = w.flips.size();
          (is_result[gi] ? result_flip : check_flip) = true;
        }
        if (g.is_two_qubit() && s < 1.0) {
          for (int q : {g.q0, g.q1})
            if (rng.uniform() < 1.0 - s) {
              w.inject(q, rng.pauli());
              any_fault = true;
            }
        }
      }
      ++st.trials;
      if (any_fault) ++st.fault_trials;
      bool detected = check_flip || (opts.bj_flips_detect && result_flip);
      if (detected) {
        ++st.detected;
        continue;
      }
      PauliOp residual = w.residual_data();
      PauliClass cls = enc.classify(residual);
      bool clean = (cls == PauliClass::trivial || cls == PauliClass::stabilizer) &&
                   !w.time_reversal && !result_flip;
      if (clean) ++st.undetected_correct;
      else ++st.undetected_faulty;
    }
  };

  int nthreads = std::max(1, opts.threads);
  if (nthreads == 1 || trials < 1000) {
    DetectionStats st;
    run_range(0, trials, st);
    return st;
  }
  std::vector<DetectionStats> parts(nthreads);
  std::vector<std::thread> pool;
  long chunk = (trials + nthreads - 1) / nthreads;
  for (int i = 0; i < nthreads; ++i) {
    long lo = i * chunk, hi = std::min(trials, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi, i] { run_range(lo, hi, parts[i]); });
  }
  for (auto& th : pool) th.join();
  DetectionStats st;
  for (const auto& p : parts) {
    st.trials += p.trials;
    st.detected += p.detected;
    st.undetected_correct += p.undetected_correct;
    st.undetected_faulty += p.undetected_faulty;
    st.fault_trials += p.fault_trials;
  }
  return st;
}

}  // namespace gse
