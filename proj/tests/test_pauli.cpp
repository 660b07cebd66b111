#include "doctest.h"
#include "gse/pauli.hpp"
#include "oracles.hpp"

using namespace gse;

namespace {

PauliOp two_qubit(int code) {
  PauliOp p(2);
  p.set_letter(0, uint8_t(code & 3));
  p.set_letter(1, uint8_t((code >> 2) & 3));
  return p;
}

}  // namespace

TEST_CASE("parse round-trips and validates") {
  CHECK(PauliOp::parse("IIII").is_identity());
  CHECK(PauliOp::parse("IIII").n_qubits() == 4);

  PauliOp loop = PauliOp::parse("IYXZYXZI");
  CHECK(loop.weight() == 6);
  CHECK(loop.str() == "IYXZYXZI");
  CHECK(loop.letter(0) == P_I);
  CHECK(loop.letter(1) == P_Y);  // qubit 0 is the leftmost letter

  PauliOp b = PauliOp::parse("-YXZI");
  CHECK(b.weight() == 3);
  CHECK(b.phase() == 2);
  CHECK(b.str() == "-YXZI");
  CHECK(PauliOp::parse("i" "ZI").str() == "iZI");
  CHECK(PauliOp::parse("-iY").phase() == 3);

  CHECK_THROWS_AS(PauliOp::parse("IXQ"), std::invalid_argument);
  CHECK_THROWS_AS(PauliOp::parse(""), std::invalid_argument);
}

TEST_CASE("single-qubit products match the Pauli table") {
  PauliOp x = PauliOp::parse("X"), z = PauliOp::parse("Z");
  CHECK(multiply(x, z).str() == "-iY");
  CHECK(multiply(z, x).str() == "iY");
  CHECK(multiply(PauliOp::parse("XY"), PauliOp::parse("YY")).str() == "iZI");
}

TEST_CASE("multiply agrees with the dense matrix oracle on 2 qubits") {
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      PauliOp pa = two_qubit(a), pb = two_qubit(b);
      PauliOp prod = multiply(pa, pb);
      auto expect = oracle::matmul(oracle::to_matrix(pa), oracle::to_matrix(pb), 4);
      CHECK(oracle::approx_equal(expect, oracle::to_matrix(prod)));
    }
}

TEST_CASE("multiply is associative and unital; Hermitian squares are scalar") {
  PauliOp id = PauliOp::identity(2);
  for (int a = 0; a < 16; ++a) {
    PauliOp pa = two_qubit(a);
    CHECK(multiply(pa, id) == pa);
    CHECK(multiply(id, pa) == pa);
    PauliOp sq = multiply(pa, pa);
    CHECK(sq.is_identity());
    CHECK(sq.phase() == 0);  // Hermitian p gives p^2 = +1
    for (int b = 0; b < 16; ++b)
      for (int cc = 0; cc < 16; ++cc) {
        PauliOp pb = two_qubit(b), pc = two_qubit(cc);
        CHECK(multiply(multiply(pa, pb), pc) == multiply(pa, multiply(pb, pc)));
      }
  }
}

TEST_CASE("commutes matches the sign test and the matrix oracle") {
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      PauliOp pa = two_qubit(a), pb = two_qubit(b);
      PauliOp ab = multiply(pa, pb), ba = multiply(pb, pa);
      bool sign_commute = (ab == ba);
      CHECK(commutes(pa, pb) == sign_commute);
      CHECK(commutes(pa, pb) == oracle::matrices_commute(pa, pb));
    }
  CHECK_FALSE(commutes(PauliOp::parse("X"), PauliOp::parse("Z")));
  CHECK(commutes(PauliOp::parse("XI"), PauliOp::parse("IZ")));
  CHECK(commutes(PauliOp::parse("IZXY"), PauliOp::parse("IXYY")) ==
        oracle::matrices_commute(PauliOp::parse("IZXY"), PauliOp::parse("IXYY")));
}

TEST_CASE("the four half-edge Paulis mutually anticommute") {
  const char* gammas[4] = {"XY", "YY", "IX", "IZ"};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK_FALSE(commutes(PauliOp::parse(gammas[i]), PauliOp::parse(gammas[j])));
}

TEST_CASE("weight") {
  CHECK(PauliOp::identity(5).weight() == 0);
  CHECK(PauliOp::parse("IYXZYXZI").weight() == 6);
  CHECK(PauliOp::parse("-YXZI").weight() == 3);
}

TEST_CASE("frame updates: hadamard, s, swap against the oracle") {
  for (int a = 0; a < 16; ++a) {
    PauliOp p = two_qubit(a);
    PauliOp h = p;
    h.apply_hadamard(0);
    auto H = oracle::kron(oracle::Mat{1 / std::sqrt(2.0), 1 / std::sqrt(2.0),
                                      1 / std::sqrt(2.0), -1 / std::sqrt(2.0)},
                          2, oracle::mat1q('I'), 2);
    auto expect = oracle::matmul(oracle::matmul(H, oracle::to_matrix(p), 4), H, 4);
    CHECK(oracle::approx_equal(expect, oracle::to_matrix(h), 1e-9));

    PauliOp sw = p;
    sw.swap_qubits(0, 1);
    PauliOp direct(2);
    direct.set_letter(0, p.letter(1));
    direct.set_letter(1, p.letter(0));
    direct.set_phase(p.phase());
    CHECK(sw == direct);
  }
  // S X S^dag = Y, S Y S^dag = -X, S Z S^dag = Z
  PauliOp x = PauliOp::parse("X");
  x.apply_s(0);
  CHECK(x.str() == "Y");
  PauliOp y = PauliOp::parse("Y");
  y.apply_s(0);
  CHECK(y.str() == "-X");
  PauliOp z = PauliOp::parse("Z");
  z.apply_s(0);
  CHECK(z.str() == "Z");
}

TEST_CASE("restricted and embedded") {
  PauliOp p = PauliOp::parse("IYXZ");
  PauliOp r = p.restricted({1, 2});
  CHECK(r.str() == "YX");
  PauliOp e = r.embedded(6, {4, 5});
  CHECK(e.str() == "IIIIYX");
  CHECK_THROWS_AS(r.embedded(6, {1}), std::invalid_argument);
}
