// Acceptance suite: one check per criterion, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include "dedchase/chase.hpp"
#include "dedchase/compiler.hpp"
#include "dedchase/encode.hpp"
#include "dedchase/homomorphism.hpp"
#include "dedchase/lab.hpp"
#include "dedchase/models.hpp"
#include "dedchase/ntm.hpp"
#include "dedchase/parser.hpp"

#include "sim_support.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace dedchase;
using namespace simtest;

namespace {

Term C(const std::string& n) { return Term::constant(n); }
Bcq goal() { return parse_bcq("? Goal."); }

int failures = 0;

void criterion(const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cout << (ok ? "PASS" : "FAIL") << " | " << name << " | " << ms << " ms"
              << (detail.empty() ? "" : " | " + detail) << std::endl;
    if (!ok) ++failures;
}

double seconds_of(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Dense seeded databases over the binary-edge schema; the fact count floor
// keeps the exhaustive oracle within its guard.
Database dense_edge_db(std::mt19937_64& rng, size_t constants, size_t min_facts,
                       size_t max_facts) {
    Schema s{{"A", 2}};
    std::vector<Term> consts;
    for (size_t i = 0; i < constants; ++i) consts.push_back(C("k" + std::to_string(i)));
    Database db(s);
    size_t target = min_facts + rng() % (max_facts - min_facts + 1);
    while (db.size() < target) {
        Term x = consts[rng() % consts.size()];
        Term y = consts[rng() % consts.size()];
        db.add("A", {x, y});
    }
    return db;
}

} // namespace

int main() {
    // 1. The four-cycle example: entailment both ways, within time, and
    //    agreement with the exhaustive oracle for the first five cycles.
    criterion("criterion-1 example-1 reproduction", [](std::string& detail) {
        RuleSet ex1 = example1_rules();
        ChaseBounds bounds{50, 100000};
        Verdict v4, v3;
        double s4 = seconds_of([&] { v4 = entails(example1_database(4), ex1, goal(), bounds); });
        double s3 = seconds_of([&] { v3 = entails(example1_database(3), ex1, goal(), bounds); });
        if (v4.outcome != Outcome::Entailed) return detail = "D4 not entailed", false;
        if (v3.outcome != Outcome::NotEntailed) return detail = "D3 not refuted", false;
        if (s4 >= 5.0 || s3 >= 5.0) return detail = "over the 5 s budget", false;
        for (unsigned k = 1; k <= 5; ++k) {
            bool oracle = brute_force_entails(example1_database(k), ex1, goal());
            Verdict v = entails(example1_database(k), ex1, goal(), bounds);
            bool agreed = (v.outcome == Outcome::Entailed) == oracle &&
                          v.outcome != Outcome::Unknown;
            if (!agreed) return detail = "oracle disagreement at k=" + std::to_string(k), false;
        }
        std::ostringstream os;
        os << "D4 " << s4 << " s, D3 " << s3 << " s, k=1..5 agree";
        detail = os.str();
        return true;
    });

    // 2. The worked encoding example, byte for byte.
    criterion("criterion-2 encoding golden", [](std::string& detail) {
        Schema dsch{{"D", 1}, {"E", 1}};
        Schema qsch{{"Q", 2}};
        Database db(Schema{{"E", 1}});
        db.add("E", {C("a")});
        EncodedInput enc = encode_input(db, parse_bcq("? Q(X, a)."), dsch, qsch);
        detail = enc.symbols;
        return enc.symbols == "1#10#1#oi#10#1#1#10010";
    });

    // 3. The product counterexample and the first-order rewriting.
    criterion("criterion-3 product counterexample", [](std::string& detail) {
        RuleSet p10 = prop10_rules();
        Database dprime = prop10_database();
        if (brute_force_entails(dprime, p10, goal()))
            return detail = "D' wrongly entails Goal", false;
        if (!brute_force_entails(direct_product(dprime, dprime), p10, goal()))
            return detail = "D' x D' fails to entail Goal", false;
        std::mt19937_64 rng(303);
        size_t disagreements = 0;
        for (int i = 0; i < 200; ++i) {
            Database db = dense_edge_db(rng, 5, 4, 25);
            if (clique4_fo_eval(db) != brute_force_entails(db, p10, goal()))
                ++disagreements;
        }
        detail = "200 seeded databases, " + std::to_string(disagreements) + " disagreements";
        return disagreements == 0;
    });

    // 4. The chase never contradicts the exhaustive oracle on random full
    //    rule sets; unknowns stay under ten percent; the suite stays under
    //    two minutes.
    criterion("criterion-4 oracle equivalence", [](std::string& detail) {
        std::mt19937_64 rng(404);
        Schema s{{"P", 1}, {"R", 2}};
        std::vector<Term> consts{C("c0"), C("c1"), C("c2")};
        size_t unknowns = 0, disagreements = 0;
        double total = seconds_of([&] {
            for (int i = 0; i < 300; ++i) {
                RuleSet rules = random_full_rules(rng, s, 3, false);
                Database db = random_database(rng, s, consts, 4);
                Bcq q = random_bcq(rng, s, consts, 2, 2);
                bool oracle = brute_force_entails(db, rules, q);
                Verdict v = entails(db, rules, q, ChaseBounds{200, 20000});
                if (v.outcome == Outcome::Unknown) ++unknowns;
                else if ((v.outcome == Outcome::Entailed) != oracle) ++disagreements;
            }
        });
        std::ostringstream os;
        os << "300 samples, " << disagreements << " disagreements, " << unknowns
           << " unknowns, " << total << " s";
        detail = os.str();
        return disagreements == 0 && unknowns < 30 && total < 120.0;
    });

    // 5. Ordering and arithmetic behavior of the generated rules on a
    //    three-constant database: zero violations across surviving branches.
    criterion("criterion-5 spine and arithmetic", [](std::string& detail) {
        Schema dsch{{"D0", 1}};
        Database db(dsch);
        for (const char* c : {"a", "b", "c"}) db.add("D0", {C(c)});
        RuleSet num = gen_sigma_num(dsch);
        ChaseTree tree = chase(db, num, ChaseBounds{300, 60000});

        size_t surviving = 0, violations = 0;
        for (size_t i = 0; i < tree.nodes().size(); ++i) {
            const auto& n = tree.nodes()[i];
            bool at_bound = n.depth >= 300 && n.status == NodeStatus::Open && !n.expanded;
            bool saturated = n.status == NodeStatus::Saturated;
            if (!at_bound && !saturated) continue;
            Database inst = tree.materialize(i);
            if (!inst.facts_of("Undesired").empty()) continue;
            ++surviving;

            auto adom = active_domain(inst);
            auto lt = [&](const Term& x, const Term& y) {
                return inst.contains(Fact{"LT", {x, y}});
            };
            for (const auto& x : adom) {
                if (lt(x, x)) ++violations;
                for (const auto& y : adom) {
                    if (!(x == y) && lt(x, y) == lt(y, x)) ++violations;
                    for (const auto& z : adom)
                        if (lt(x, y) && lt(y, z) && !lt(x, z)) ++violations;
                }
            }

            if (inst.facts_of("Min").size() != 1) ++violations;
            auto spine = spine_of(inst);
            if (spine.size() < 9) {
                ++violations;
                continue;
            }
            auto rank = spine_ranks(spine);
            for (const Fact* f : inst.facts_of("Add")) {
                auto x = rank.find(f->args[0]), y = rank.find(f->args[1]),
                     z = rank.find(f->args[2]);
                if (x != rank.end() && y != rank.end() && z != rank.end() &&
                    x->second + y->second != z->second)
                    ++violations;
            }
            for (const Fact* f : inst.facts_of("Mul")) {
                auto x = rank.find(f->args[0]), y = rank.find(f->args[1]),
                     z = rank.find(f->args[2]);
                if (x != rank.end() && y != rank.end() && z != rank.end() &&
                    x->second * y->second != z->second)
                    ++violations;
            }
            for (bool one : {false, true})
                for (const Fact* f : inst.facts_of(one ? "Bit1" : "Bit0")) {
                    auto x = rank.find(f->args[0]), k = rank.find(f->args[1]);
                    if (x != rank.end() && k != rank.end() &&
                        ((x->second >> k->second) & 1) != (one ? 1u : 0u))
                        ++violations;
                }
            for (size_t x = 0; x + 1 < 8; ++x)
                for (size_t y = 0; x + y < 8; ++y) {
                    if (!inst.contains(Fact{"Add", {spine[x], spine[y], spine[x + y]}}))
                        ++violations;
                    if (x * y < 8 &&
                        !inst.contains(Fact{"Mul", {spine[x], spine[y], spine[x * y]}}))
                        ++violations;
                }
        }
        std::ostringstream os;
        os << surviving << " surviving branches, " << violations << " violations";
        detail = os.str();
        return surviving >= 6 && violations == 0;
    });

    // 6. End-to-end machine compilation at desk scale: the chase derives
    //    acceptance and the copied query fact exactly when the interpreter
    //    accepts the encoded input.
    criterion("criterion-6 machine compilation end-to-end", [](std::string& detail) {
        Schema dsch{{"D0", 1}};
        Schema qsch{{"Q0", 1}};
        Database d(dsch);
        d.add("D0", {C("a")});
        Bcq q0 = parse_bcq("? Q0(a).");

        EncodedInput enc = encode_input(d, q0, dsch, qsch);
        uint64_t nq = godel_number(q0, d, qsch);
        Ntm m = convergent_closure(string_matcher(enc.symbols));
        if (simulate(m, enc.symbols, 200) != SimOutcome::Accept)
            return detail = "interpreter rejects the good input", false;
        // The encoding of the empty database keeps the query block but
        // yields no facts; the machine must reject it.
        if (simulate(m, "1#1#0##1#1#0#", 200) == SimOutcome::Accept)
            return detail = "interpreter accepts the empty database", false;

        RuleSet compiled = compile(m, dsch, qsch);
        ChaseBounds bounds;
        bounds.max_depth = 100000;
        bounds.max_nodes = 120000;
        ChaseTree tree(Database{}, ChaseBounds{});
        Verdict on_d = entails_with_tree(d, compiled, q0, bounds, tree);
        if (on_d.outcome != Outcome::Entailed)
            return detail = "chase verdict " + outcome_name(on_d.outcome), false;

        auto inst = good_leaf_instance(tree);
        if (!inst) return detail = "no good branch found", false;
        auto spine = spine_of(*inst, 64);
        if (spine.size() <= nq) return detail = "spine too short", false;
        if (!inst->contains(Fact{"Accept", {spine[nq]}}))
            return detail = "Accept(n_q) missing", false;
        if (!inst->contains(Fact{"Q0", {C("a")}}))
            return detail = "copied query fact missing", false;
        for (const Fact* f : inst->facts_of("Accept"))
            if (!(f->args[0] == spine[nq])) return detail = "spurious Accept", false;

        Verdict on_empty = entails(Database{dsch}, compiled, q0, bounds);
        if (on_empty.outcome != Outcome::NotEntailed)
            return detail = "empty database verdict " + outcome_name(on_empty.outcome), false;
        detail = "Accept(" + std::to_string(nq) + ") and Q0(a) derived; empty side refuted";
        return true;
    });

    // 7. The closure suites: no violations across seeded samples.
    criterion("criterion-7 closure suites", [](std::string& detail) {
        size_t bad = 0;
        // Sem-style samples from the two worked ontologies.
        for (uint64_t seed = 0; seed < 100; ++seed) {
            for (int which = 0; which < 2; ++which) {
                RuleSet rules = which == 0 ? example1_rules() : prop10_rules();
                OntologySample sample;
                sample.schemaD = Schema{{"A", 2}};
                sample.schemaQ = Schema{{"Goal", 0}};
                std::mt19937_64 rng(seed * 2 + which);
                for (int i = 0; i < 6; ++i)
                    sample.databases.push_back(dense_edge_db(rng, 4, 2, 14));
                sample.databases.push_back(example1_database(4));
                sample.queries = {goal(), parse_bcq("? Goal, Goal.")};
                for (size_t d = 0; d < sample.databases.size(); ++d)
                    for (size_t q = 0; q < sample.queries.size(); ++q)
                        if (brute_force_entails(sample.databases[d], rules,
                                                sample.queries[q]))
                            sample.pairs.emplace_back(d, q);
                CheckBudget budget;
                budget.samples = 4000;
                budget.seed = seed;
                if (!check_ocqa_closure(sample, budget).passed()) ++bad;
            }
        }
        // Homomorphism preservation for equality-free rules.
        RuleSet dtgds = parse_rules("A(X, Y) -> R(X). R(X) -> S(X) | T(X).");
        CheckReport hom =
            check_hom_preservation(dtgds, CheckBudget{200, 7, ChaseBounds{60, 8000}});
        if (!hom.passed()) ++bad;
        // Product preservation for single-head rules.
        RuleSet eds = parse_rules("A(X, Y) -> A(Y, X). A(X, X) -> Goal.");
        CheckReport prod = check_product_preservation(eds, CheckBudget{200, 11});
        if (!prod.passed()) ++bad;
        detail = "200 closure samples + 200 hom + 200 product, " + std::to_string(bad) +
                 " failing reports";
        return bad == 0;
    });

    // 8. The per-pair rule construction entails each of its input pairs.
    criterion("criterion-8 ontology-to-rules", [](std::string& detail) {
        std::mt19937_64 rng(808);
        Schema s{{"P", 1}, {"R", 2}};
        std::vector<Term> consts{C("a"), C("b"), C("c")};
        size_t pairs_checked = 0, wrong = 0;
        for (uint64_t seed = 0; seed < 50; ++seed) {
            std::vector<std::pair<Database, Bcq>> sample;
            for (int p = 0; p < 2; ++p) {
                Database d = random_database(rng, s, consts, 4);
                if (d.empty()) d.add("P", {C("a")});
                std::vector<Term> adom;
                for (const auto& t : active_domain(d)) adom.push_back(t);
                sample.emplace_back(d, random_bcq(rng, s, adom, 2, 2));
            }
            RuleSet rules = ontology_to_deds(sample);
            for (const auto& [d, q] : sample) {
                ++pairs_checked;
                if (entails(d, rules, q, ChaseBounds{60, 8000}).outcome != Outcome::Entailed)
                    ++wrong;
            }
        }
        detail = std::to_string(pairs_checked) + " pairs, " + std::to_string(wrong) +
                 " not entailed";
        return wrong == 0;
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << std::endl;
    return failures;
}
