#pragma once

#include <cstddef>
#include <vector>

namespace acr::stats {

double mean(const std::vector<double>& xs);

// P(X >= wins) for X ~ Binomial(wins + losses, 1/2). Ties are the caller's to
// drop before counting.
double sign_test_one_sided(std::size_t wins, std::size_t losses);

struct PairedOutcome {
  std::size_t wins = 0;
  std::size_t losses = 0;
  std::size_t ties = 0;
  double p_value = 1.0;
};

// Counts pairs with a[i] < b[i] as wins for a ("a is smaller").
PairedOutcome paired_sign_test_less(const std::vector<double>& a,
                                    const std::vector<double>& b);

}  // namespace acr::stats
