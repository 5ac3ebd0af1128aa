#include <doctest.h>

#include "qpc/experiment.hpp"

using namespace qpc;

TEST_CASE("state support suite passes") {
  const SuiteResult r = verify_state_support();
  CHECK(r.pass);
  CHECK(r.max_deviation <= 1e-15);
}

TEST_CASE("pair-XOR identity suite passes at reduced scale") {
  const SuiteResult r = verify_eq18(2025, 20000);
  CHECK(r.pass);
  CHECK(r.max_deviation < 0.015);
}

TEST_CASE("truth table suite regenerates all sixteen rows") {
  const SuiteResult r = verify_truth_table();
  CHECK(r.pass);
  CHECK(r.detail == "rows=16/16");
}

TEST_CASE("marginals suite sees I/2 everywhere") {
  const SuiteResult r = verify_marginals();
  CHECK(r.pass);
  CHECK(r.max_deviation <= 1e-12);
}

TEST_CASE("bell pairing brute force finds (1,2)~(5,6) and (3,4)~(7,8)") {
  const BellPairingReport pairing = find_bell_pairing(2000, 3030);
  CHECK(pairing.partner_of_12 == 5);
  CHECK(pairing.perfect);
  CHECK(pairing.agreement[1] == 1.0);
  // the mismatched pairings agree only at chance (1/4 * 1/4 ... not 1)
  CHECK(pairing.agreement[0] < 0.5);
  CHECK(pairing.agreement[2] < 0.5);

  const SuiteResult r = verify_bell_pairing(4040, 2000);
  CHECK(r.pass);
}

TEST_CASE("detection experiment bookkeeping") {
  const DetectionReport det =
      detection_experiment(intercept_resend(ChannelTarget::ToAlice), 4, 600, 99);
  CHECK(det.trials == 600);
  CHECK(det.aborted <= det.trials);
  CHECK(det.rate == doctest::Approx(double(det.aborted) / 600.0));
  CHECK(det.half_width > 0.0);
  CHECK_THROWS_AS(
      detection_experiment(intercept_resend(), 4, 0, 99), std::invalid_argument);
}

TEST_CASE("detection experiments are reproducible and worker-invariant") {
  const AttackModel model = intercept_resend(ChannelTarget::ToAlice);
  const DetectionReport serial = detection_experiment(model, 8, 500, 123, nullptr, 1);
  const DetectionReport fanned = detection_experiment(model, 8, 500, 123, nullptr, 4);
  CHECK(serial.aborted == fanned.aborted);
}
