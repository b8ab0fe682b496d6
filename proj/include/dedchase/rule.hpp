#pragma once

#include "dedchase/database.hpp"

#include <set>
#include <string>
#include <vector>

namespace dedchase {

// A relation atom or an equality literal over variables and constants.
// Equalities use the reserved relation name "=" with exactly two arguments.
struct Atom {
    std::string relation;
    std::vector<Term> args;

    bool is_equality() const { return relation == "="; }
    static Atom equality(Term lhs, Term rhs) { return Atom{"=", {std::move(lhs), std::move(rhs)}}; }

    friend std::strong_ordering operator<=>(const Atom&, const Atom&) = default;
    std::string str() const;
};

// One head disjunct: a conjunction of relation atoms and equalities. Head
// variables absent from the rule body are existential in their disjunct.
struct Disjunct {
    std::vector<Atom> literals;

    std::string str() const;
    friend bool operator==(const Disjunct&, const Disjunct&) = default;
};

// A disjunctive embedded dependency:
//   body atoms  ->  disjunct_1 | ... | disjunct_k       (k >= 1)
struct Ded {
    std::vector<Atom> body;
    std::vector<Disjunct> disjuncts;

    std::set<Term> body_variables() const;
    // Existential variables of disjunct i: head variables not in the body.
    std::set<Term> existential_variables(size_t disjunct_index) const;

    std::string str() const;
    friend bool operator==(const Ded&, const Ded&) = default;
};

struct RuleSet {
    Schema schema; // every symbol used by the rules
    std::vector<Ded> rules;

    std::string str() const;
};

enum class RuleLabel { ED, DTGD, TGD, NCLike, EqualityFree, Full };

// Independent classification flags per the standard taxonomy:
// ED iff k = 1; DTGD iff equality-free; TGD iff both; full iff no
// existential variables; NC-like iff a single nullary-atom head.
std::set<RuleLabel> classify(const Ded& rule);
std::string label_name(RuleLabel label);

// Symbols occurring in the head of some rule. The complement within the
// schema is the extensional part.
std::set<std::string> intensional_symbols(const RuleSet& rules);

// Structural validation of the dependency shape (nonempty equality-free
// body, nonempty disjuncts); throws std::invalid_argument when violated.
void validate(const Ded& rule);
void validate(const RuleSet& rules);

// Collects relation symbols and arities used by a rule into `schema`.
void collect_schema(const Ded& rule, Schema& schema);

} // namespace dedchase
