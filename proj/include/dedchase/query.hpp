#pragma once

#include "dedchase/database.hpp"
#include "dedchase/rule.hpp"

#include <set>
#include <string>
#include <vector>

namespace dedchase {

// A boolean conjunctive query: an existentially closed, nonempty conjunction
// of relation atoms over variables and constants.
struct Bcq {
    std::vector<Atom> atoms;

    std::set<Term> variables() const;        // the existential variables
    std::set<Term> constants() const;        // const(q)
    Schema schema() const;

    std::string str() const; // `? Q(X, a).`
    friend bool operator==(const Bcq&, const Bcq&) = default;
};

// A conjunctive query with an ordered tuple of free variables.
struct Cq {
    std::vector<Term> free_variables;
    std::vector<Atom> atoms;

    std::set<Term> existential_variables() const;
    Schema schema() const;

    // Instantiates the free variables with a constant tuple.
    Bcq instantiate(const std::vector<Term>& tuple) const;

    std::string str() const; // `?(X) Q(X, Y).`
};

// [q]: renames each existential variable to a fresh labeled null (indices
// follow the variable order) and drops the quantifiers.
Database freeze(const Bcq& q);

// Connected components of the atom graph; atoms are adjacent iff they share
// an existential variable, so ground atoms are singleton components.
std::vector<Bcq> prime_components(const Bcq& q);

// q |= q2, via the homomorphism criterion on frozen databases.
bool implies(const Bcq& q, const Bcq& q2);

// Homomorphic equivalence (mutual implication).
bool equivalent(const Bcq& q, const Bcq& q2);

// Conjunction with existential variables renamed apart.
Bcq conjoin(const Bcq& q, const Bcq& q2);

// I |= q.
bool evaluate(const Bcq& q, const Database& instance);

// The per-pair rule construction: one DED per pair (D, q) whose body is D
// with constants turned into variables and whose head disjoins q with the
// pairwise constant equalities. Requires const(q) ⊆ adom(D) and D nonempty.
RuleSet ontology_to_deds(const std::vector<std::pair<Database, Bcq>>& pairs);

} // namespace dedchase
