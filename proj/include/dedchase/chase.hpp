#pragma once

#include "dedchase/database.hpp"
#include "dedchase/query.hpp"
#include "dedchase/rule.hpp"

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dedchase {

struct ChaseBounds {
    unsigned max_depth = 2000;   // firings along one branch
    unsigned max_nodes = 100000; // nodes in the whole tree
    bool dedup_isomorphic = false;
    unsigned workers = 1;
};

// A restricted-chase trigger: a rule together with an assignment of the
// rule's body variables. Triggers are ordered by rule index, then by the
// assignment in lexicographic term order; all enumeration in the engine
// follows this order.
struct Trigger {
    size_t rule = 0;
    std::vector<std::pair<Term, Term>> assignment; // sorted by variable

    friend std::strong_ordering operator<=>(const Trigger&, const Trigger&) = default;
    Term image_of(const Term& var) const;
    std::string str() const;
};

enum class NodeStatus { Open, Saturated, Failed };

// One chase-tree node. Instances are stored as deltas against the parent
// (facts added, merges applied); ChaseTree::materialize replays them.
struct ChaseNode {
    NodeStatus status = NodeStatus::Open;
    unsigned depth = 0;
    int parent = -1;
    int rule = -1;        // rule fired at the parent to create this node
    int disjunct = -1;    // chosen disjunct
    bool expanded = false;
    bool query_holds = false; // entailment runs cut branches here
    bool merged = false;      // deduplicated against an isomorphic sibling
    std::vector<Fact> added;                    // facts new in this node
    std::vector<std::pair<Term, Term>> merges;  // term -> representative
    std::vector<int> children;
};

class ChaseTree {
public:
    ChaseTree(Database root_instance, ChaseBounds bounds)
        : root_(std::move(root_instance)), bounds_(bounds) {
        nodes_.push_back(ChaseNode{});
    }

    const std::vector<ChaseNode>& nodes() const { return nodes_; }
    const ChaseNode& node(size_t i) const { return nodes_.at(i); }
    const Database& root_instance() const { return root_; }
    const ChaseBounds& bounds() const { return bounds_; }
    bool hit_node_bound() const { return hit_node_bound_; }

    // Replays deltas along the branch to rebuild the node's instance.
    Database materialize(size_t node_id) const;

    // Line-oriented export: depth | rule | disjunct | added | merges | status.
    std::string trace() const;

private:
    friend class ChaseEngine;
    Database root_;
    ChaseBounds bounds_;
    std::vector<ChaseNode> nodes_;
    bool hit_node_bound_ = false;
};

enum class Outcome { Entailed, NotEntailed, Unknown };

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    // NotEntailed: a saturated instance that models the rules, contains the
    // database, and violates the query.
    std::optional<Database> witness;
    std::string note; // Unknown: the exhausted bound
};

std::string outcome_name(Outcome o);

// All applicable restricted-chase triggers of `rules` on `instance`: the body
// maps into the instance and no head disjunct is already satisfied by an
// extension of the match.
std::vector<Trigger> applicable_triggers(const Database& instance, const RuleSet& rules);

// Fires one trigger: one child instance per disjunct. Fresh nulls for the
// existential variables are drawn from `next_null` (each child independently).
struct FiredChild {
    Database instance;
    NodeStatus status = NodeStatus::Open; // Failed on constant-constant merges
    std::vector<Fact> added;
    std::vector<std::pair<Term, Term>> merges;
    uint32_t next_null = 0;
};
std::vector<FiredChild> fire(const Database& instance, const RuleSet& rules,
                             const Trigger& trigger, uint32_t next_null);

// Whether a disjunct of `rule` is satisfied in `instance` under the body
// assignment (the restricted-chase blocking condition).
bool some_disjunct_satisfied(const Database& instance, const Ded& rule,
                             const Trigger& trigger);

// I |= Σ, by scanning every body match for a satisfied disjunct.
bool instance_models(const Database& instance, const RuleSet& rules);

// Fair breadth-first disjunctive chase up to the bounds.
ChaseTree chase(const Database& db, const RuleSet& rules, const ChaseBounds& bounds = {});

// Bounded disjunctive-chase entailment with three-valued verdicts. Branches
// are cut as soon as the query holds on them; a saturated branch violating
// the query refutes entailment and is returned as a witness.
Verdict entails(const Database& db, const RuleSet& rules, const Bcq& query,
                const ChaseBounds& bounds = {});

// Like entails, but also returns the explored tree (single-worker only).
Verdict entails_with_tree(const Database& db, const RuleSet& rules, const Bcq& query,
                          const ChaseBounds& bounds, ChaseTree& tree_out);

// Certain answers of a CQ: one entailment verdict per tuple over adom(D)^n.
std::map<std::vector<Term>, Verdict> certain_answers(const Database& db,
                                                     const RuleSet& rules, const Cq& query,
                                                     const ChaseBounds& bounds = {});

} // namespace dedchase
