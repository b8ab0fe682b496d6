#include "dedchase/lab.hpp"

#include "dedchase/homomorphism.hpp"
#include "dedchase/models.hpp"

#include <algorithm>
#include <sstream>

namespace dedchase {

namespace {

Term V(const std::string& n) { return Term::variable(n); }
Term C(const std::string& n) { return Term::constant(n); }

Atom atom(std::string rel, std::vector<Term> args = {}) {
    return Atom{std::move(rel), std::move(args)};
}

} // namespace

RuleSet example1_rules() {
    Ded r;
    auto x = [](unsigned i) { return V("X" + std::to_string(i)); };
    for (unsigned i = 0; i < 4; ++i) {
        unsigned j = (i + 1) % 4;
        r.body.push_back(atom("A", {x(i), x(j)}));
        r.body.push_back(atom("A", {x(j), x(i)}));
    }
    r.disjuncts.push_back(Disjunct{{atom("Goal")}});
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = i + 1; j < 4; ++j)
            r.disjuncts.push_back(Disjunct{{Atom::equality(x(i), x(j))}});
    RuleSet rs;
    collect_schema(r, rs.schema);
    rs.rules.push_back(std::move(r));
    return rs;
}

Database example1_database(unsigned k) {
    Schema s{{"A", 2}};
    Database db(s);
    for (unsigned i = 0; i < k; ++i) {
        unsigned j = (i + 1) % k;
        Term ai = C("a" + std::to_string(i));
        Term aj = C("a" + std::to_string(j));
        db.add("A", {ai, aj});
        db.add("A", {aj, ai});
    }
    return db;
}

RuleSet prop10_rules() {
    Ded r;
    auto x = [](unsigned i) { return V("X" + std::to_string(i)); };
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j)
            r.body.push_back(atom("A", {x(i), x(j)}));
    r.disjuncts.push_back(Disjunct{{atom("Goal")}});
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = i + 1; j < 4; ++j)
            r.disjuncts.push_back(Disjunct{{Atom::equality(x(i), x(j))}});
    RuleSet rs;
    collect_schema(r, rs.schema);
    rs.rules.push_back(std::move(r));
    return rs;
}

Database prop10_database() {
    Schema s{{"A", 2}};
    Database db(s);
    for (const char* u : {"a", "b"})
        for (const char* v : {"a", "b"}) db.add("A", {C(u), C(v)});
    return db;
}

bool clique4_fo_eval(const Database& db) {
    std::vector<Term> dom;
    for (const auto& t : active_domain(db)) dom.push_back(t);
    const size_t n = dom.size();
    if (n < 4) return false;
    auto edge = [&](const Term& a, const Term& b) {
        return db.contains(Fact{"A", {a, b}});
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k)
                for (size_t l = k + 1; l < n; ++l) {
                    std::vector<Term> pick{dom[i], dom[j], dom[k], dom[l]};
                    bool all = true;
                    for (const auto& u : pick)
                        for (const auto& v : pick)
                            if (!edge(u, v)) { all = false; break; }
                    if (all) return true;
                }
    return false;
}

Database universal_model(const Database& db, const std::vector<Bcq>& queries) {
    auto adom = active_domain(db);
    Schema schema;
    for (const auto& q : queries) {
        for (const auto& c : q.constants())
            if (!adom.count(c))
                throw std::invalid_argument("universal_model: query constant " + c.str() +
                                            " outside adom(D)");
        schema = Schema::united(schema, q.schema());
    }
    std::vector<Database> parts;
    parts.reserve(queries.size());
    for (const auto& q : queries) {
        Database frozen = freeze(q);
        Database widened(schema);
        for (const auto& f : frozen.facts()) widened.add(f);
        parts.push_back(std::move(widened));
    }
    return disjoint_union_over(adom, parts);
}

bool OntologySample::member(size_t db, size_t query) const {
    for (const auto& [d, q] : pairs)
        if (d == db && q == query) return true;
    return false;
}

std::string CheckReport::str() const {
    std::ostringstream os;
    if (failures.empty()) {
        os << "PASS | " << name << " | " << seed << " | -\n";
    } else {
        for (const auto& f : failures) os << "FAIL | " << name << " | " << seed << " | " << f
                                          << "\n";
    }
    return os.str();
}

CheckReport check_ocqa_closure(const OntologySample& sample, const CheckBudget& budget) {
    CheckReport report;
    report.name = "ocqa-closure";
    report.seed = budget.seed;

    auto decided_index = [&](const Bcq& q) -> std::optional<size_t> {
        for (size_t i = 0; i < sample.queries.size(); ++i)
            if (equivalent(sample.queries[i], q)) return i;
        return std::nullopt;
    };

    // Condition 1: closure under query conjunction.
    for (size_t d = 0; d < sample.databases.size(); ++d) {
        for (size_t q1 = 0; q1 < sample.queries.size() && report.checks < budget.samples; ++q1) {
            if (!sample.member(d, q1)) continue;
            for (size_t q2 = 0; q2 < sample.queries.size() && report.checks < budget.samples;
                 ++q2) {
                if (!sample.member(d, q2)) continue;
                auto conj = conjoin(sample.queries[q1], sample.queries[q2]);
                auto idx = decided_index(conj);
                if (!idx) continue; // undecided by the sample
                ++report.checks;
                if (!sample.member(d, *idx))
                    report.failures.push_back("conjunction: db#" + std::to_string(d) + " " +
                                              sample.queries[q1].str() + " & " +
                                              sample.queries[q2].str());
            }
        }
    }

    // Condition 2: closure under query implication.
    for (size_t d = 0; d < sample.databases.size(); ++d) {
        for (size_t q = 0; q < sample.queries.size() && report.checks < budget.samples; ++q) {
            if (!sample.member(d, q)) continue;
            for (size_t q2 = 0; q2 < sample.queries.size() && report.checks < budget.samples;
                 ++q2) {
                if (q2 == q) continue;
                if (!implies(sample.queries[q], sample.queries[q2])) continue;
                ++report.checks;
                if (!sample.member(d, q2))
                    report.failures.push_back("implication: db#" + std::to_string(d) + " " +
                                              sample.queries[q].str() + " |= " +
                                              sample.queries[q2].str());
            }
        }
    }

    // Condition 3: closure under injective database homomorphisms fixing the
    // query constants.
    for (size_t d = 0; d < sample.databases.size(); ++d) {
        for (size_t q = 0; q < sample.queries.size() && report.checks < budget.samples; ++q) {
            if (!sample.member(d, q)) continue;
            std::set<Term> fixed = sample.queries[q].constants();
            for (size_t d2 = 0; d2 < sample.databases.size() && report.checks < budget.samples;
                 ++d2) {
                if (d2 == d) continue;
                if (!find_homomorphism(sample.databases[d], sample.databases[d2], fixed,
                                       /*injective=*/true))
                    continue;
                ++report.checks;
                if (!sample.member(d2, q))
                    report.failures.push_back("injective-hom: db#" + std::to_string(d) +
                                              " => db#" + std::to_string(d2) + " " +
                                              sample.queries[q].str());
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Samplers.

Database random_database(std::mt19937_64& rng, const Schema& schema,
                         const std::vector<Term>& constants, size_t max_facts) {
    Database db(schema);
    if (schema.size() == 0 || max_facts == 0) return db;
    size_t n = rng() % (max_facts + 1);
    for (size_t i = 0; i < n; ++i) {
        const std::string& rel = schema.symbols()[rng() % schema.size()];
        unsigned ar = schema.arity(rel);
        if (ar > 0 && constants.empty()) continue;
        std::vector<Term> args;
        for (unsigned j = 0; j < ar; ++j) args.push_back(constants[rng() % constants.size()]);
        db.add(rel, std::move(args));
    }
    return db;
}

Bcq random_bcq(std::mt19937_64& rng, const Schema& schema,
               const std::vector<Term>& constants, size_t max_atoms, size_t max_vars) {
    Bcq q;
    size_t vars = 1 + rng() % std::max<size_t>(1, max_vars);
    size_t atoms = 1 + rng() % std::max<size_t>(1, max_atoms);
    for (size_t i = 0; i < atoms; ++i) {
        const std::string& rel = schema.symbols()[rng() % schema.size()];
        unsigned ar = schema.arity(rel);
        std::vector<Term> args;
        for (unsigned j = 0; j < ar; ++j) {
            bool use_var = constants.empty() || (rng() % 2 == 0);
            if (use_var) args.push_back(V("X" + std::to_string(rng() % vars)));
            else args.push_back(constants[rng() % constants.size()]);
        }
        q.atoms.push_back(atom(rel, std::move(args)));
    }
    return q;
}

RuleSet random_full_rules(std::mt19937_64& rng, const Schema& schema, size_t max_rules,
                          bool tgd_only, bool allow_disjunction) {
    RuleSet rs;
    rs.schema = schema;
    size_t n = 1 + rng() % std::max<size_t>(1, max_rules);
    for (size_t i = 0; i < n; ++i) {
        Ded r;
        size_t body_atoms = 1 + rng() % 2;
        size_t vars = 1 + rng() % 3;
        for (size_t b = 0; b < body_atoms; ++b) {
            const std::string& rel = schema.symbols()[rng() % schema.size()];
            unsigned ar = schema.arity(rel);
            std::vector<Term> args;
            for (unsigned j = 0; j < ar; ++j)
                args.push_back(V("X" + std::to_string(rng() % vars)));
            r.body.push_back(atom(rel, std::move(args)));
        }
        std::set<Term> body_vars = r.body_variables();
        std::vector<Term> pool(body_vars.begin(), body_vars.end());
        size_t disjuncts = (tgd_only || !allow_disjunction) ? 1 : 1 + rng() % 2;
        for (size_t d = 0; d < disjuncts; ++d) {
            Disjunct dj;
            bool equality = !tgd_only && !pool.empty() && (rng() % 3 == 0);
            if (equality && pool.size() >= 1) {
                Term a = pool[rng() % pool.size()];
                Term b = pool[rng() % pool.size()];
                dj.literals.push_back(Atom::equality(a, b));
            } else {
                const std::string& rel = schema.symbols()[rng() % schema.size()];
                unsigned ar = schema.arity(rel);
                std::vector<Term> args;
                bool ok = true;
                for (unsigned j = 0; j < ar; ++j) {
                    if (pool.empty()) { ok = false; break; }
                    args.push_back(pool[rng() % pool.size()]);
                }
                if (!ok) {
                    dj.literals.push_back(atom(rel, std::vector<Term>(ar, pool.empty()
                                                                              ? C("c0")
                                                                              : pool[0])));
                } else {
                    dj.literals.push_back(atom(rel, std::move(args)));
                }
            }
            r.disjuncts.push_back(std::move(dj));
        }
        collect_schema(r, rs.schema);
        rs.rules.push_back(std::move(r));
    }
    return rs;
}

// ---------------------------------------------------------------------------

CheckReport check_hom_preservation(const RuleSet& rules, const CheckBudget& budget) {
    for (const auto& r : rules.rules) {
        auto labels = classify(r);
        if (!labels.count(RuleLabel::DTGD))
            throw std::invalid_argument(
                "check_hom_preservation expects an equality-free rule set");
    }
    CheckReport report;
    report.name = "hom-preservation";
    report.seed = budget.seed;
    std::mt19937_64 rng(budget.seed);

    std::vector<Term> consts{C("c0"), C("c1"), C("c2")};
    for (size_t i = 0; i < budget.samples; ++i) {
        Database d = random_database(rng, rules.schema, consts, 4);
        if (d.empty()) continue;
        Bcq q = random_bcq(rng, rules.schema, {}, 2, 2);

        // A random endomorphism image plus noise: h fixes const(q) (empty).
        std::map<Term, Term> h;
        for (const auto& c : active_domain(d)) h[c] = consts[rng() % consts.size()];
        Database d2(d.schema());
        for (const auto& f : d.facts()) {
            std::vector<Term> args;
            for (const auto& t : f.args) args.push_back(h.at(t));
            d2.add(f.relation, std::move(args));
        }
        Database noise = random_database(rng, rules.schema, consts, 2);
        for (const auto& f : noise.facts()) d2.add(f);

        ++report.checks;
        Verdict on_d = entails(d, rules, q, budget.bounds);
        if (on_d.outcome != Outcome::Entailed) continue;
        Verdict on_d2 = entails(d2, rules, q, budget.bounds);
        if (on_d2.outcome == Outcome::NotEntailed)
            report.failures.push_back("sample " + std::to_string(i) + ": " + q.str() +
                                      " lost under homomorphism");
    }
    return report;
}

CheckReport check_product_preservation(const RuleSet& rules, const CheckBudget& budget) {
    for (const auto& r : rules.rules)
        if (r.disjuncts.size() != 1)
            throw std::invalid_argument("check_product_preservation expects single-head rules");
    CheckReport report;
    report.name = "product-preservation";
    report.seed = budget.seed;
    std::mt19937_64 rng(budget.seed);

    bool full = true;
    for (const auto& r : rules.rules)
        for (size_t d = 0; d < r.disjuncts.size(); ++d)
            if (!r.existential_variables(d).empty()) full = false;

    std::vector<Term> consts{C("c0"), C("c1"), C("c2")};
    for (size_t i = 0; i < budget.samples; ++i) {
        Database lhs = random_database(rng, rules.schema, consts, 4);
        Database rhs = random_database(rng, rules.schema, consts, 4);

        if (instance_models(lhs, rules) && instance_models(rhs, rules)) {
            ++report.checks;
            if (!instance_models(direct_product(lhs, rhs), rules))
                report.failures.push_back("sample " + std::to_string(i) +
                                          ": product is not a model");
        }

        if (full) {
            Bcq q = random_bcq(rng, rules.schema, {}, 2, 2);
            try {
                if (!brute_force_entails(lhs, rules, q) &&
                    !brute_force_entails(rhs, rules, q)) {
                    ++report.checks;
                    if (brute_force_entails(direct_product(lhs, rhs), rules, q))
                        report.failures.push_back("sample " + std::to_string(i) + ": " +
                                                  q.str() +
                                                  " becomes entailed on the product");
                }
            } catch (const std::length_error&) {
                // product outgrew the oracle guard; skip this sample
            }
        }
    }
    return report;
}

Database domino_to_database(const DominoSystem& system) {
    Schema s{{"H", 2}, {"V", 2}};
    Database db(s);
    for (const auto& [a, b] : system.horizontal) db.add("H", {C(a), C(b)});
    for (const auto& [a, b] : system.vertical) db.add("V", {C(a), C(b)});
    return db;
}

} // namespace dedchase
