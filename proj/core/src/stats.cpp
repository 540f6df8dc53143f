#include "acr/stats.hpp"

#include <cmath>
#include <numeric>

#include "acr/error.hpp"

namespace acr::stats {

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sign_test_one_sided(std::size_t wins, std::size_t losses) {
  const std::size_t n = wins + losses;
  if (n == 0) return 1.0;
  // Sum binomial terms in log space; n stays small in practice.
  double p = 0.0;
  for (std::size_t k = wins; k <= n; ++k) {
    double log_term = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                      std::lgamma(static_cast<double>(n - k) + 1.0) - n * std::log(2.0);
    p += std::exp(log_term);
  }
  return std::min(1.0, p);
}

PairedOutcome paired_sign_test_less(const std::vector<double>& a,
                                    const std::vector<double>& b) {
  if (a.size() != b.size()) throw ContractError("paired samples differ in length");
  PairedOutcome out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) {
      ++out.wins;
    } else if (a[i] > b[i]) {
      ++out.losses;
    } else {
      ++out.ties;
    }
  }
  out.p_value = sign_test_one_sided(out.wins, out.losses);
  return out;
}

}  // namespace acr::stats
