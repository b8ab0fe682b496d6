#pragma once

#include "dedchase/chase.hpp"
#include "dedchase/database.hpp"
#include "dedchase/query.hpp"
#include "dedchase/rule.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace dedchase {

// The four-cycle rule: an eight-atom A-cycle body implying Goal or the
// collapse of two of the four variables.
RuleSet example1_rules();
// D_k: the symmetric A-cycle on k constants a0..a(k-1); the successor wraps
// at the boundary, so D_1 is the single loop A(a0, a0).
Database example1_database(unsigned k);

// The complete-graph variant used for the product counterexample: a 16-atom
// body over four variables.
RuleSet prop10_rules();
// The two-constant complete A-graph.
Database prop10_database();

// Direct evaluation of the first-order rewriting of the prop10 ontology:
// some four pairwise-distinct constants with all sixteen A-edges present.
bool clique4_fo_eval(const Database& db);

// Finite universal-model prefix: the disjoint union over adom(D) of the
// frozen queries.
Database universal_model(const Database& db, const std::vector<Bcq>& queries);

// A finite sample of an ontology: membership is decided exactly on the
// listed database and query universes, everything else is treated as
// undecided, so closure checks never manufacture violations.
struct OntologySample {
    Schema schemaD;
    Schema schemaQ;
    std::vector<Database> databases;
    std::vector<Bcq> queries;
    std::vector<std::pair<size_t, size_t>> pairs; // members, by universe index

    bool member(size_t db, size_t query) const;
};

struct CheckBudget {
    size_t samples = 200;
    uint64_t seed = 0;
    ChaseBounds bounds{};
};

struct CheckReport {
    std::string name;
    uint64_t seed = 0;
    size_t checks = 0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
    std::string str() const; // `PASS|FAIL | check-name | seed | witness`
};

// Searches the sample for violations of the three OCQA closure conditions
// (query conjunction, query implication, injective database homomorphism).
CheckReport check_ocqa_closure(const OntologySample& sample, const CheckBudget& budget);

// Samples homomorphism instances D -> D' and asserts entailment is never
// lost (Entailed on D, NotEntailed on D'). Rejects rule sets with equality.
CheckReport check_hom_preservation(const RuleSet& rules, const CheckBudget& budget);

// Samples model pairs and asserts the direct product is still a model, and
// (for full rule sets) that joint non-entailment survives the product.
// Rejects disjunctive rules.
CheckReport check_product_preservation(const RuleSet& rules, const CheckBudget& budget);

struct DominoSystem {
    std::set<std::string> dominos;
    std::set<std::pair<std::string, std::string>> horizontal;
    std::set<std::pair<std::string, std::string>> vertical;
};

// The natural encoding of a domino system over {H/2, V/2}.
Database domino_to_database(const DominoSystem& system);

// Seeded samplers shared by the checkers and the test suites.
Database random_database(std::mt19937_64& rng, const Schema& schema,
                         const std::vector<Term>& constants, size_t max_facts);
Bcq random_bcq(std::mt19937_64& rng, const Schema& schema,
               const std::vector<Term>& constants, size_t max_atoms, size_t max_vars);
// Random full DEDs (no existential variables); equalities and disjunctions
// appear unless `tgd_only` is set.
RuleSet random_full_rules(std::mt19937_64& rng, const Schema& schema, size_t max_rules,
                          bool tgd_only, bool allow_disjunction = true);

} // namespace dedchase
