// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0

#include "rta/adequacy_cases.hpp"

#include "rta/rational.hpp"
#include "rta/safety.hpp"

namespace rta {

std::string chain_level_label(int chain, int index) {
  if (chain == kLevelCount) return std::string(level_name(static_cast<Level>(index)));
  return "L" + std::to_string(index);
}

std::vector<AdequacyCaseSpec> enumerate_prec1_cases(int chain) {
  if (chain < 2) throw Error(ErrCode::Invalid, "risk chain needs at least two levels");
  std::vector<AdequacyCaseSpec> out;
  // Distinct endpoints are checked over neighbouring levels only; each such
  // pair requires the tick to stay inside the pair in between. Both
  // orientations live under the one case id.
  for (int a = 0; a + 1 < chain; ++a) {
    const int b = a + 1;
    AdequacyCaseSpec c;
    c.id = "pair:" + chain_level_label(chain, a) + "<->" + chain_level_label(chain, b);
    for (int l = 0; l < chain; ++l)
      if (l != a && l != b) c.disallowed.push_back(l);
    c.orientations = {{a, b}, {b, a}};
    out.push_back(std::move(c));
  }
  // Equal endpoints: allowed = {one below} + {at or above}, so the disallowed
  // set is everything two or more levels down.
  for (int a = 0; a < chain; ++a) {
    AdequacyCaseSpec c;
    c.id = "same:" + chain_level_label(chain, a);
    for (int l = 0; l + 2 <= a; ++l) c.disallowed.push_back(l);
    c.orientations = {{a, a}};
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<AdequacyCaseSpec> enumerate_bad_cases(int chain) {
  if (chain < 3) throw Error(ErrCode::Invalid, "risk chain needs at least three levels");
  std::vector<AdequacyCaseSpec> out;
  for (int a = 2; a < chain; ++a) {
    for (int b = 2; b < chain; ++b) {
      AdequacyCaseSpec c;
      c.id = "bad:" + chain_level_label(chain, a) + "->" + chain_level_label(chain, b);
      c.disallowed = {0};
      c.orientations = {{a, b}};
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace rta
