// Walks through the two-query instance v1 = [4, 1], v2 = [1, 2]: equilibria at
// two targets for bidder 1, witness multipliers, the lower-report construction
// and a small incentive audit.

#include <iostream>

#include "autobid/autobid.hpp"

int main() {
  using namespace autobid;

  const Instance e1({{Rational(4), Rational(1)}, {Rational(1), Rational(2)}});

  for (const Rational& t1 : {Rational(1), Rational(1, 2)}) {
    const Targets targets(t1, Rational(1));
    std::cout << "T1 = " << to_string(t1) << ", T2 = 1\n";
    const auto bounds = k_bounds(e1, targets);
    std::cout << "  kmin = " << bounds.kmin << ", kmax = " << bounds.kmax << '\n';
    for (std::size_t k = 0; k <= e1.queries(); ++k) {
      const auto cert = equilibrium_exists(e1, targets, k);
      std::cout << "  N_" << k << ": C1 = " << cert.c1 << ", C2 = " << cert.c2
                << (cert.exists ? "  equilibrium" : "") << '\n';
      if (cert.exists) {
        const auto mu = witness_multipliers(e1, targets, k);
        std::cout << "       witness mu1 = " << to_string(mu.mu1) << ", mu2 = " << to_string(mu.mu2) << '\n';
      }
    }
  }

  // Uniform N_2 bids at T = (1, 1) with mu = (3, 1), moved to a lower report.
  const Targets truth(Rational(1), Rational(1));
  const BidProfile n2 = uniform_bids(e1, truth, {Rational(3), Rational(1)});
  std::cout << "\nN_2 bids are an equilibrium: " << std::boolalpha
            << verify_equilibrium(e1, truth, n2, TieBreak::Bidder1Wins).equilibrium << '\n';
  const auto lower = construct_lower_report(e1, truth, n2, Rational(1, 2));
  std::cout << "after reporting T1 = 1/2:\n";
  for (std::size_t i = 0; i < lower.profile.bidders(); ++i) {
    std::cout << "  bidder " << i + 1 << " bids";
    for (const auto& b : lower.profile.bids[i]) std::cout << ' ' << b;
    std::cout << '\n';
  }
  Rational paid = 0;
  for (auto j : lower.outcome.allocation.won_by(0)) paid += lower.outcome.costs[j];
  std::cout << "  bidder 1 wins " << lower.outcome.allocation.won_by(0).size() << " query(ies), pays " << to_string(paid)
            << '\n';

  const auto audit = ic_audit(e1, Rational(1), Rational(1), {Rational(1, 2), Rational(1)});
  std::cout << "\naudit over reports {1/2, 1}: RAIC " << to_string(audit.raic) << ", OAIC " << to_string(audit.oaic)
            << '\n';
  return 0;
}
