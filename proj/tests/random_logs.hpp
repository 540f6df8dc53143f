#pragma once

#include <string>
#include <vector>

#include "acr/action_code.hpp"
#include "acr/rng.hpp"

namespace acr::testing {

inline std::string label(char prefix, std::size_t i) { return prefix + std::to_string(i); }

// Random log over up to n_actions x n_objects labels, each code holding 1-2
// objects and 1-3 actions.
inline ObservationLog random_log(Rng& rng, std::size_t n_actions, std::size_t n_objects,
                                 std::size_t length) {
  ObservationLog log;
  for (std::size_t t = 0; t < length; ++t) {
    ActionCode code;
    std::size_t n_obj = 1 + rng.index(2);
    std::size_t n_act = 1 + rng.index(3);
    for (std::size_t k = 0; k < n_obj; ++k) {
      std::string o = label('o', rng.index(n_objects));
      if (std::find(code.objects.begin(), code.objects.end(), o) == code.objects.end()) {
        code.objects.push_back(o);
      }
    }
    for (std::size_t k = 0; k < n_act; ++k) {
      std::string a = label('a', rng.index(n_actions));
      if (std::find(code.actions.begin(), code.actions.end(), a) == code.actions.end()) {
        code.actions.push_back(a);
      }
    }
    log.push_back(std::move(code));
  }
  return log;
}

}  // namespace acr::testing
