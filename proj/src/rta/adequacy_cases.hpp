// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0
//
// Case enumeration for sampling-time adequacy over a risk chain
// L0 < L1 < ... < L(n-1) (n = 4 and bad < unsafe < safe < safer in this
// project; the enumeration is generic so tests can exercise arbitrary chain
// lengths against a combinatorial reference).
//
// Chain-neighbour adequacy ("prec1"): sampled transitions between adjacent
// levels or within one level must not visit other levels mid-interval:
//  * neighbouring endpoints {A, A+1}: allowed exactly {A, A+1}, queried in
//    both orientations under one case (n-1 cases);
//  * equal endpoints (A, A): allowed {A}, everything above A, and the one
//    level directly below A (a dip of more than one level must not hide
//    inside a tick); cases whose disallowed set is empty are vacuous
//    (n cases, so 2n-1 case ids and 3n-2 endpoint orientations in total;
//    ten orientations for the four-level chain).
//
// Bad-avoidance adequacy ("bad"): for every ordered endpoint pair over the
// OK levels (two or more above the bottom), the bottom level must not be
// passed through mid-interval.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rta {

struct AdequacyCaseSpec {
  std::string id;
  std::vector<int> disallowed;                     // level indices to refute mid-tick
  std::vector<std::pair<int, int>> orientations;   // (from, to) endpoint sub-queries
};

// Human-readable level label inside case ids: the project's four names for
// n == 4, "L<i>" otherwise.
std::string chain_level_label(int chain, int index);

std::vector<AdequacyCaseSpec> enumerate_prec1_cases(int chain);
std::vector<AdequacyCaseSpec> enumerate_bad_cases(int chain);

}  // namespace rta
