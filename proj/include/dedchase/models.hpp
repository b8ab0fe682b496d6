#pragma once

#include "dedchase/chase.hpp"
#include "dedchase/query.hpp"
#include "dedchase/rule.hpp"

#include <vector>

namespace dedchase {

// All subset-minimal models I ⊇ D of a full rule set over the Herbrand base
// on adom(D) ∪ const(Σ), by exhaustive enumeration in ascending size with
// subset pruning. Throws std::invalid_argument on rules with existential
// variables and std::length_error when the free-atom guard is exceeded.
std::vector<Database> minimal_models(const Database& db, const RuleSet& rules,
                                     size_t max_free_atoms = 20);

// Exhaustive entailment oracle for full rule sets: enumerates every instance
// over the Herbrand base on adom(D) ∪ const(Σ) ∪ const(q) and checks that
// each model of Σ containing D satisfies q. Same guards as minimal_models;
// the default free-atom guard admits bases of 2^24 candidate instances.
bool brute_force_entails(const Database& db, const RuleSet& rules, const Bcq& query,
                         size_t max_free_atoms = 24);

} // namespace dedchase
