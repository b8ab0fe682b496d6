#include "dedchase/chase.hpp"

#include "dedchase/homomorphism.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dedchase {

namespace {

// Union-find over terms with merge preferences: constants beat nulls, and
// the smaller term wins among equals in kind. Merging two distinct
// constants is a hard conflict (instances interpret constants as themselves).
class TermUnion {
public:
    Term find(Term t) const {
        for (;;) {
            auto it = parent_.find(t);
            if (it == parent_.end()) return t;
            t = it->second;
        }
    }

    // Returns false on a constant-constant conflict.
    bool unite(const Term& a, const Term& b) {
        Term ra = find(a), rb = find(b);
        if (ra == rb) return true;
        if (ra.is_constant() && rb.is_constant()) return false;
        // Prefer the constant, then the smaller term, as representative.
        bool keep_a = ra.is_constant() || (!rb.is_constant() && ra < rb);
        if (keep_a) parent_.emplace(rb, ra);
        else parent_.emplace(ra, rb);
        return true;
    }

    bool trivial() const { return parent_.empty(); }

    // All non-identity mappings term -> representative, sorted.
    std::vector<std::pair<Term, Term>> mappings() const {
        std::vector<std::pair<Term, Term>> out;
        out.reserve(parent_.size());
        for (const auto& [t, _] : parent_) out.emplace_back(t, find(t));
        return out;
    }

private:
    std::map<Term, Term> parent_;
};

Fact rewrite_fact(const Fact& f, const std::map<Term, Term>& m) {
    Fact out{f.relation, f.args};
    for (auto& t : out.args) {
        auto it = m.find(t);
        if (it != m.end()) t = it->second;
    }
    return out;
}

} // namespace

Term Trigger::image_of(const Term& var) const {
    for (const auto& [v, t] : assignment)
        if (v == var) return t;
    throw std::out_of_range("trigger has no binding for " + var.str());
}

std::string Trigger::str() const {
    std::ostringstream os;
    os << "rule " << rule << " {";
    for (size_t i = 0; i < assignment.size(); ++i) {
        if (i) os << ", ";
        os << assignment[i].first.str() << "->" << assignment[i].second.str();
    }
    os << "}";
    return os.str();
}

std::string outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Entailed: return "ENTAILED";
    case Outcome::NotEntailed: return "NOT-ENTAILED";
    case Outcome::Unknown: return "UNKNOWN";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Disjunct satisfaction under a body match (the restricted-chase condition).

bool some_disjunct_satisfied(const Database& instance, const Ded& rule,
                             const Trigger& trigger) {
    for (size_t d = 0; d < rule.disjuncts.size(); ++d) {
        const Disjunct& disjunct = rule.disjuncts[d];
        std::set<Term> existentials = rule.existential_variables(d);

        // Resolve a head term to an instance term where the binding decides it.
        auto resolve = [&](const Term& t) -> std::optional<Term> {
            if (t.is_variable()) {
                if (existentials.count(t)) return std::nullopt;
                return trigger.image_of(t);
            }
            return t;
        };

        // Unify the equalities: existential variables form classes that may
        // get pinned to an instance term.
        TermUnion classes;
        std::map<Term, Term> pinned; // existential class rep -> instance term
        bool consistent = true;
        for (const auto& lit : disjunct.literals) {
            if (!lit.is_equality()) continue;
            auto a = resolve(lit.args[0]);
            auto b = resolve(lit.args[1]);
            if (a && b) {
                if (!(*a == *b)) { consistent = false; break; }
            } else if (a || b) {
                const Term& var = a ? lit.args[1] : lit.args[0];
                const Term& val = a ? *a : *b;
                Term rep = classes.find(var);
                auto it = pinned.find(rep);
                if (it != pinned.end() && !(it->second == val)) { consistent = false; break; }
                pinned.emplace(rep, val);
            } else {
                Term r1 = classes.find(lit.args[0]);
                Term r2 = classes.find(lit.args[1]);
                if (!(r1 == r2)) {
                    auto p1 = pinned.find(r1);
                    auto p2 = pinned.find(r2);
                    if (p1 != pinned.end() && p2 != pinned.end() &&
                        !(p1->second == p2->second)) { consistent = false; break; }
                    classes.unite(r1, r2);
                    Term rep = classes.find(r1);
                    if (p1 != pinned.end()) pinned[rep] = p1->second;
                    if (p2 != pinned.end()) pinned[rep] = p2->second;
                }
            }
        }
        if (!consistent) continue;

        auto value_of = [&](const Term& t) -> std::optional<Term> {
            if (t.is_variable() && existentials.count(t)) {
                Term rep = classes.find(t);
                auto it = pinned.find(rep);
                if (it != pinned.end()) return it->second;
                return std::nullopt;
            }
            return resolve(t);
        };

        // Build the residual pattern over the still-free existential classes.
        std::vector<Fact> pattern;
        std::set<Term> flexible;
        std::set<Term> vars_in_pattern;
        bool broken = false;
        for (const auto& lit : disjunct.literals) {
            if (lit.is_equality()) continue;
            if (!instance.schema().has(lit.relation) ||
                instance.schema().arity(lit.relation) != lit.args.size()) {
                broken = true; // symbol absent from the instance schema
                break;
            }
            Fact f{lit.relation, {}};
            for (const auto& t : lit.args) {
                auto v = value_of(t);
                if (v) {
                    f.args.push_back(*v);
                } else {
                    Term rep = classes.find(t);
                    f.args.push_back(rep);
                    flexible.insert(rep);
                    vars_in_pattern.insert(rep);
                }
            }
            pattern.push_back(std::move(f));
        }
        if (broken) continue;

        // Existential classes that occur in no relation atom need some domain
        // element to exist.
        bool needs_domain = false;
        for (const auto& v : existentials) {
            Term rep = classes.find(v);
            if (!pinned.count(rep) && !vars_in_pattern.count(rep)) needs_domain = true;
        }
        if (needs_domain && instance.terms().empty()) continue;

        if (pattern.empty()) return true;
        bool found = for_each_match(pattern, instance, flexible, false,
                                    [](const Binding&) { return false; });
        if (found) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Trigger enumeration.

namespace {

std::vector<Fact> body_pattern(const Ded& rule) {
    std::vector<Fact> out;
    out.reserve(rule.body.size());
    for (const auto& a : rule.body) out.push_back(Fact{a.relation, a.args});
    return out;
}

Trigger make_trigger(size_t rule_idx, const Ded& rule, const Binding& binding) {
    Trigger t;
    t.rule = rule_idx;
    for (const auto& v : rule.body_variables()) t.assignment.emplace_back(v, binding.at(v));
    return t;
}

// All body matches of one rule, unfiltered by the blocking condition.
void enumerate_matches(const Database& instance, const RuleSet& rules, size_t rule_idx,
                       std::set<Trigger>& out) {
    const Ded& rule = rules.rules[rule_idx];
    for_each_match(body_pattern(rule), instance, rule.body_variables(), false,
                   [&](const Binding& b) {
                       out.insert(make_trigger(rule_idx, rule, b));
                       return true;
                   });
}

// Matches of one rule where some body atom is mapped onto one of the given
// anchor facts (delta discovery after new facts arrive).
void enumerate_matches_anchored(const Database& instance, const RuleSet& rules,
                                size_t rule_idx, const std::vector<Fact>& anchors,
                                std::set<Trigger>& out) {
    const Ded& rule = rules.rules[rule_idx];
    std::vector<Fact> pattern = body_pattern(rule);
    std::set<Term> body_vars = rule.body_variables();
    for (size_t pos = 0; pos < pattern.size(); ++pos) {
        for (const Fact& anchor : anchors) {
            if (anchor.relation != pattern[pos].relation ||
                anchor.args.size() != pattern[pos].args.size())
                continue;
            // Seed the binding from the anchored atom.
            Binding seed;
            bool ok = true;
            for (size_t i = 0; i < anchor.args.size() && ok; ++i) {
                const Term& p = pattern[pos].args[i];
                if (p.is_variable()) {
                    auto [it, fresh] = seed.emplace(p, anchor.args[i]);
                    if (!fresh && !(it->second == anchor.args[i])) ok = false;
                } else if (!(p == anchor.args[i])) {
                    ok = false;
                }
            }
            if (!ok) continue;
            std::vector<Fact> rest;
            for (size_t j = 0; j < pattern.size(); ++j)
                if (j != pos) rest.push_back(pattern[j]);
            // Substitute the seed into the rest and match what remains.
            for (auto& f : rest)
                for (auto& t : f.args) {
                    auto it = seed.find(t);
                    if (it != seed.end()) t = it->second;
                }
            std::set<Term> flexible;
            for (const auto& v : body_vars)
                if (!seed.count(v)) flexible.insert(v);
            for_each_match(rest, instance, flexible, false, [&](const Binding& b) {
                Binding full = b;
                full.insert(seed.begin(), seed.end());
                out.insert(make_trigger(rule_idx, rule, full));
                return true;
            });
        }
    }
}

} // namespace

std::vector<Trigger> applicable_triggers(const Database& instance, const RuleSet& rules) {
    std::vector<Trigger> out;
    for (size_t r = 0; r < rules.rules.size(); ++r) {
        std::set<Trigger> matches;
        enumerate_matches(instance, rules, r, matches);
        for (const auto& t : matches)
            if (!some_disjunct_satisfied(instance, rules.rules[r], t)) out.push_back(t);
    }
    return out; // already sorted: rule-major, then assignment order
}

// ---------------------------------------------------------------------------
// Firing.

namespace {

// One child per disjunct. `base` must already carry a schema covering the
// rule's head symbols; when no equalities merge anything, the facts are
// added in place.
FiredChild fire_disjunct(Database base, const Ded& rule, const Trigger& trigger,
                         size_t d, uint32_t next_null) {
    const Disjunct& disjunct = rule.disjuncts[d];
    FiredChild child;
    child.next_null = next_null;

    std::map<Term, Term> sigma;
    for (const auto& [v, t] : trigger.assignment) sigma.emplace(v, t);
    for (const auto& z : rule.existential_variables(d))
        sigma.emplace(z, Term::null(child.next_null++));

    auto apply = [&](const Term& t) -> Term {
        if (t.is_variable()) return sigma.at(t);
        return t;
    };

    TermUnion merges;
    for (const auto& lit : disjunct.literals) {
        if (!lit.is_equality()) continue;
        Term a = apply(lit.args[0]);
        Term b = apply(lit.args[1]);
        if (!merges.unite(a, b)) {
            child.merges.emplace_back(a, b); // the offending pair, for traces
            child.status = NodeStatus::Failed;
            child.instance = std::move(base);
            return child;
        }
    }

    child.merges = merges.mappings();
    if (child.merges.empty()) {
        for (const auto& lit : disjunct.literals) {
            if (lit.is_equality()) continue; // trivially satisfied merges
            Fact f{lit.relation, {}};
            for (const auto& t : lit.args) f.args.push_back(apply(t));
            child.added.push_back(f);
            base.add(std::move(f));
        }
        child.instance = std::move(base);
    } else {
        std::map<Term, Term> merge_map(child.merges.begin(), child.merges.end());
        Database next(base.schema());
        for (const auto& f : base.facts()) next.add(rewrite_fact(f, merge_map));
        for (const auto& lit : disjunct.literals) {
            if (lit.is_equality()) continue;
            Fact f{lit.relation, {}};
            for (const auto& t : lit.args) f.args.push_back(merges.find(apply(t)));
            child.added.push_back(f);
            next.add(std::move(f));
        }
        child.instance = std::move(next);
    }
    std::sort(child.added.begin(), child.added.end());
    child.added.erase(std::unique(child.added.begin(), child.added.end()),
                      child.added.end());
    return child;
}

} // namespace

std::vector<FiredChild> fire(const Database& instance, const RuleSet& rules,
                             const Trigger& trigger, uint32_t next_null) {
    const Ded& rule = rules.rules.at(trigger.rule);
    Schema schema = Schema::united(instance.schema(), rules.schema);
    std::vector<FiredChild> out;
    out.reserve(rule.disjuncts.size());
    for (size_t d = 0; d < rule.disjuncts.size(); ++d)
        out.push_back(fire_disjunct(Database(schema, instance.facts()), rule, trigger, d,
                                    next_null));
    return out;
}

// ---------------------------------------------------------------------------
// The engine.

namespace {

struct BranchState {
    Database instance;
    std::deque<Trigger> pending;
    std::set<Trigger> pending_set;
    uint32_t next_null = 0;
};

uint32_t first_free_null(const Database& db) {
    uint32_t next = 0;
    for (const auto& t : db.terms())
        if (t.is_null()) next = std::max(next, t.index() + 1);
    return next;
}

} // namespace

class ChaseEngine {
public:
    ChaseEngine(const Database& db, const RuleSet& rules, const Bcq* query,
                const ChaseBounds& bounds)
        : rules_(rules), query_(query), bounds_(bounds),
          tree_(Database(Schema::united(db.schema(), rules.schema), db.facts()), bounds) {}

    Verdict run() {
        auto root = std::make_shared<BranchState>();
        root->instance = tree_.root_instance();
        root->next_null = first_free_null(root->instance);
        discover_full(*root);

        if (query_ && evaluate(*query_, root->instance)) {
            tree_.nodes_[0].query_holds = true;
            verdict_.outcome = Outcome::Entailed;
            return verdict_;
        }
        queue_.emplace_back(0, std::move(root));

        unsigned workers = std::max(1u, bounds_.workers);
        if (workers == 1) {
            single_worker_loop();
        } else {
            std::vector<std::thread> pool;
            for (unsigned i = 0; i < workers; ++i)
                pool.emplace_back([this] { worker_loop(); });
            for (auto& th : pool) th.join();
            if (error_) std::rethrow_exception(error_);
        }

        if (stopped_not_entailed_) return verdict_;
        if (open_leaves_ > 0 || tree_.hit_node_bound_) {
            verdict_.outcome = Outcome::Unknown;
            std::ostringstream os;
            if (tree_.hit_node_bound_) os << "node bound " << bounds_.max_nodes << " exhausted";
            else os << "depth bound " << bounds_.max_depth << " exhausted on " << open_leaves_
                    << " branch(es)";
            verdict_.note = os.str();
        } else {
            verdict_.outcome = Outcome::Entailed;
        }
        return verdict_;
    }

    ChaseTree take_tree() { return std::move(tree_); }

private:
    const RuleSet& rules_;
    const Bcq* query_;
    ChaseBounds bounds_;
    ChaseTree tree_;

    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<std::pair<int, std::shared_ptr<BranchState>>> queue_;
    unsigned inflight_ = 0;
    bool stop_ = false;
    bool stopped_not_entailed_ = false;
    std::exception_ptr error_;
    size_t open_leaves_ = 0;
    Verdict verdict_;

    void single_worker_loop() {
        while (!queue_.empty() && !stop_) {
            auto [id, state] = std::move(queue_.front());
            queue_.pop_front();
            expand(id, std::move(state));
        }
    }

    void worker_loop() {
        std::unique_lock lk(mu_);
        for (;;) {
            cv_.wait(lk, [&] { return stop_ || !queue_.empty() || inflight_ == 0; });
            if (stop_ || (queue_.empty() && inflight_ == 0)) return;
            if (queue_.empty()) continue;
            auto [id, state] = std::move(queue_.front());
            queue_.pop_front();
            ++inflight_;
            lk.unlock();
            try {
                expand(id, std::move(state));
            } catch (...) {
                lk.lock();
                if (!error_) error_ = std::current_exception();
                stop_ = true;
                --inflight_;
                cv_.notify_all();
                return;
            }
            lk.lock();
            --inflight_;
            cv_.notify_all();
        }
    }

    void discover_full(BranchState& s) {
        for (size_t r = 0; r < rules_.rules.size(); ++r) {
            std::set<Trigger> matches;
            enumerate_matches(s.instance, rules_, r, matches);
            for (const auto& t : matches) {
                if (s.pending_set.count(t)) continue;
                if (some_disjunct_satisfied(s.instance, rules_.rules[r], t)) continue;
                s.pending.push_back(t);
                s.pending_set.insert(t);
            }
        }
    }

    void discover_delta(BranchState& s, const std::vector<Fact>& fresh) {
        std::set<Trigger> found;
        for (size_t r = 0; r < rules_.rules.size(); ++r)
            enumerate_matches_anchored(s.instance, rules_, r, fresh, found);
        for (const auto& t : found) {
            if (s.pending_set.count(t)) continue;
            if (some_disjunct_satisfied(s.instance, rules_.rules[t.rule], t)) continue;
            s.pending.push_back(t);
            s.pending_set.insert(t);
        }
    }

    // Expands one node: all matching and firing happens lock-free on the
    // owned branch state; the tree and queue are only touched under the lock.
    void expand(int id, std::shared_ptr<BranchState> state) {
        // Pop pending triggers until one is still unblocked. Blocked triggers
        // stay blocked forever (facts only grow), so discarding is safe.
        std::optional<Trigger> chosen;
        while (!state->pending.empty()) {
            Trigger t = std::move(state->pending.front());
            state->pending.pop_front();
            state->pending_set.erase(t);
            if (!some_disjunct_satisfied(state->instance, rules_.rules[t.rule], t)) {
                chosen = std::move(t);
                break;
            }
        }

        if (!chosen) {
            std::lock_guard lk(mu_);
            tree_.nodes_[id].expanded = true;
            tree_.nodes_[id].status = NodeStatus::Saturated;
            if (query_ && !tree_.nodes_[id].query_holds) {
                verdict_.outcome = Outcome::NotEntailed;
                verdict_.witness = state->instance;
                stopped_not_entailed_ = true;
                stop_ = true;
                cv_.notify_all();
            }
            return;
        }

        unsigned parent_depth;
        {
            std::lock_guard lk(mu_);
            parent_depth = tree_.nodes_[id].depth;
            tree_.nodes_[id].expanded = true;
        }

        // The last child steals the parent instance; earlier children copy.
        const Ded& rule = rules_.rules[chosen->rule];
        std::vector<FiredChild> children;
        children.reserve(rule.disjuncts.size());
        for (size_t d = 0; d < rule.disjuncts.size(); ++d) {
            bool last = (d + 1 == rule.disjuncts.size());
            Database base = last ? std::move(state->instance)
                                 : Database(state->instance.schema(),
                                            state->instance.facts());
            children.push_back(
                fire_disjunct(std::move(base), rule, *chosen, d, state->next_null));
        }
        unsigned child_depth = parent_depth + 1;

        struct Prepared {
            ChaseNode node;
            std::shared_ptr<BranchState> state; // null when not explored further
        };
        std::vector<Prepared> prepared;
        prepared.reserve(children.size());

        for (size_t i = 0; i < children.size(); ++i) {
            FiredChild& fc = children[i];
            Prepared p;
            p.node.depth = child_depth;
            p.node.parent = id;
            p.node.rule = static_cast<int>(chosen->rule);
            p.node.disjunct = static_cast<int>(i);
            p.node.status = fc.status;
            p.node.merges = fc.merges;
            p.node.added = fc.added;

            if (fc.status == NodeStatus::Failed) {
                prepared.push_back(std::move(p));
                continue;
            }
            if (query_ && evaluate(*query_, fc.instance)) {
                p.node.query_holds = true; // branch closed by the query
                prepared.push_back(std::move(p));
                continue;
            }
            if (child_depth >= bounds_.max_depth) {
                prepared.push_back(std::move(p)); // open leaf at the bound
                continue;
            }

            std::shared_ptr<BranchState> cs;
            bool last = (i + 1 == children.size());
            if (last) {
                cs = std::move(state);
            } else {
                cs = std::make_shared<BranchState>();
                cs->pending = state->pending;
                cs->pending_set = state->pending_set;
            }
            cs->instance = std::move(fc.instance);
            cs->next_null = fc.next_null;

            if (!p.node.merges.empty()) {
                // Merges can both invalidate trigger identities and enable
                // joins a delta search would miss: rebuild from scratch.
                cs->pending.clear();
                cs->pending_set.clear();
                discover_full(*cs);
            } else {
                discover_delta(*cs, p.node.added);
            }

            p.state = std::move(cs);
            prepared.push_back(std::move(p));
        }

        std::lock_guard lk(mu_);
        if (stop_) return;
        for (auto& p : prepared) {
            if (tree_.nodes_.size() >= bounds_.max_nodes) {
                tree_.hit_node_bound_ = true;
                stop_ = true;
                cv_.notify_all();
                return;
            }
            int child_id = static_cast<int>(tree_.nodes_.size());
            if (p.state && bounds_.dedup_isomorphic &&
                queued_isomorphic(p.node.depth, p.state->instance)) {
                p.state.reset(); // merged into an isomorphic queued sibling
                p.node.merged = true;
            }
            if (!p.state && p.node.status == NodeStatus::Open && !p.node.query_holds &&
                !p.node.merged)
                ++open_leaves_; // depth-bound leaf
            tree_.nodes_[id].children.push_back(child_id);
            bool enqueue = p.state != nullptr;
            tree_.nodes_.push_back(std::move(p.node));
            if (enqueue) {
                queue_.emplace_back(child_id, std::move(p.state));
                cv_.notify_all();
            }
        }
    }

    bool queued_isomorphic(unsigned depth, const Database& inst) {
        for (const auto& [qid, qs] : queue_) {
            if (tree_.nodes_[qid].depth != depth) continue;
            if (is_isomorphic_fixing_constants(inst, qs->instance)) return true;
        }
        return false;
    }
};

Database ChaseTree::materialize(size_t node_id) const {
    std::vector<size_t> path;
    for (int cur = static_cast<int>(node_id); cur != -1; cur = nodes_.at(cur).parent)
        path.push_back(static_cast<size_t>(cur));
    std::reverse(path.begin(), path.end());

    Database out = root_;
    for (size_t id : path) {
        const ChaseNode& n = nodes_[id];
        if (n.status == NodeStatus::Failed) return out; // failed leaves keep the parent view
        if (!n.merges.empty()) {
            std::map<Term, Term> mm(n.merges.begin(), n.merges.end());
            Database rewritten(out.schema());
            for (const auto& f : out.facts()) rewritten.add(rewrite_fact(f, mm));
            out = std::move(rewritten);
        }
        for (const auto& f : n.added) out.add(f);
    }
    return out;
}

std::string ChaseTree::trace() const {
    std::ostringstream os;
    for (const auto& n : nodes_) {
        os << n.depth << " | ";
        if (n.rule < 0) os << "-";
        else os << n.rule;
        os << " | ";
        if (n.disjunct < 0) os << "-";
        else os << n.disjunct;
        os << " | ";
        for (size_t i = 0; i < n.added.size(); ++i) {
            if (i) os << ";";
            os << n.added[i].str();
        }
        os << " | ";
        for (size_t i = 0; i < n.merges.size(); ++i) {
            if (i) os << ";";
            os << n.merges[i].first.str() << "->" << n.merges[i].second.str();
        }
        os << " | ";
        switch (n.status) {
        case NodeStatus::Open: os << (n.query_holds ? "open(query)" : "open"); break;
        case NodeStatus::Saturated: os << "saturated"; break;
        case NodeStatus::Failed: os << "failed"; break;
        }
        os << "\n";
    }
    return os.str();
}

bool instance_models(const Database& instance, const RuleSet& rules) {
    for (size_t r = 0; r < rules.rules.size(); ++r) {
        std::set<Trigger> matches;
        enumerate_matches(instance, rules, r, matches);
        for (const auto& t : matches)
            if (!some_disjunct_satisfied(instance, rules.rules[r], t)) return false;
    }
    return true;
}

ChaseTree chase(const Database& db, const RuleSet& rules, const ChaseBounds& bounds) {
    ChaseEngine engine(db, rules, nullptr, bounds);
    engine.run();
    return engine.take_tree();
}

Verdict entails(const Database& db, const RuleSet& rules, const Bcq& query,
                const ChaseBounds& bounds) {
    ChaseEngine engine(db, rules, &query, bounds);
    return engine.run();
}

Verdict entails_with_tree(const Database& db, const RuleSet& rules, const Bcq& query,
                          const ChaseBounds& bounds, ChaseTree& tree_out) {
    ChaseEngine engine(db, rules, &query, bounds);
    Verdict v = engine.run();
    tree_out = engine.take_tree();
    return v;
}

std::map<std::vector<Term>, Verdict> certain_answers(const Database& db,
                                                     const RuleSet& rules, const Cq& query,
                                                     const ChaseBounds& bounds) {
    std::map<std::vector<Term>, Verdict> out;
    std::vector<Term> domain;
    for (const auto& c : active_domain(db)) domain.push_back(c);

    size_t n = query.free_variables.size();
    std::vector<size_t> idx(n, 0);
    for (;;) {
        std::vector<Term> tuple;
        tuple.reserve(n);
        bool valid = true;
        for (size_t i = 0; i < n; ++i) {
            if (domain.empty()) { valid = false; break; }
            tuple.push_back(domain[idx[i]]);
        }
        if (n > 0 && !valid) break; // empty domain: no tuples
        out.emplace(tuple, entails(db, rules, query.instantiate(tuple), bounds));
        if (n == 0) break;
        size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < domain.size()) break;
            idx[pos] = 0;
            if (pos == 0) { pos = SIZE_MAX; break; }
        }
        if (pos == SIZE_MAX) break;
    }
    return out;
}

} // namespace dedchase
