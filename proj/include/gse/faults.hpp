#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gse/circuit.hpp"
#include "gse/encoding.hpp"
#include "gse/pauli.hpp"

namespace gse {

enum class Verdict {
  benign,
  detected_by_measurement,
  detectable_later,
  undetectable_logical,
  evolved_operator_exception
};
std::string verdict_name(Verdict v);

struct FaultEvent {
  int gate_index = 0;
  bool before = false;  // before gate_index; otherwise immediately after it
  int qubit = -1;
  uint8_t pauli = P_I;
  bool swap_qq = false;  // inject pauli on both qubits of a swap gate
};

struct FaultOutcome {
  FaultEvent event;
  PauliOp residual_data;
  std::vector<int> ancilla_flips;  // measured qubits whose outcome flipped
  bool time_reversal = false;
  Verdict verdict = Verdict::benign;
};

struct FaultSummary {
  std::map<Verdict, int> counts;
  int time_reversals = 0;
  int total = 0;
  std::vector<FaultEvent> undetectable_events;
  std::vector<FaultEvent> exception_events;
  int count(Verdict v) const {
    auto it = counts.find(v);
    return it == counts.end() ? 0 : it->second;
  }
};

// Conjugates the Pauli frame through one gate (prep/measure resets excluded).
// Sets time_reversal when the frame anticommutes with an evolve gate's Pauli.
void conjugate_through(const Gate& g, PauliOp& frame, bool& time_reversal);

// Conjugates p through every gate of the circuit in order, no injections.
PauliOp conjugate_through_circuit(const Circuit& c, const PauliOp& p, bool& time_reversal);

FaultOutcome propagate(const Circuit& c, const FaultEvent& event, const Encoding& enc);

struct EnumerateOptions {
  bool swap_qq_faults = true;
};

struct EnumerationResult {
  std::vector<FaultOutcome> outcomes;
  FaultSummary summary;
};

EnumerationResult enumerate_single_faults(const Circuit& c, const Encoding& enc,
                                          const EnumerateOptions& opts = {});

struct MonteCarloOptions {
  bool bj_flips_detect = false;  // count result-readout flips as detections
  int threads = 1;
  std::vector<int> result_measurements;  // gate indices of result (not check) readouts
};

struct DetectionStats {
  long trials = 0;
  long detected = 0;
  long undetected_correct = 0;
  long undetected_faulty = 0;
  long fault_trials = 0;  // trials in which at least one fault was injected
  double no_fault_fraction() const;
  // Empirical p_a: of the trials that are not undetected-correct (their
  // computation was corrupted or an injection was flagged), the flagged share.
  double detected_given_faulty() const;
  // Flagged share of all trials with at least one injection, counting inert
  // and self-cancelling injections against detection.
  double detected_given_injection() const;
  // Half-width of a 3-sigma binomial interval around fraction k/n.
  static double binom_halfwidth3(double p_hat, long n);
};

DetectionStats monte_carlo(const Circuit& c, const Encoding& enc, double s, long trials,
                           uint64_t seed, const MonteCarloOptions& opts = {});

}  // namespace gse
