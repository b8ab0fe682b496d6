#include "dedchase/chase.hpp"
#include "dedchase/homomorphism.hpp"
#include "dedchase/lab.hpp"
#include "dedchase/models.hpp"
#include "dedchase/parser.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace dedchase;

namespace {

Term C(const std::string& n) { return Term::constant(n); }

Bcq goal() { return parse_bcq("? Goal."); }

} // namespace

TEST_CASE("the four-cycle example data") {
    CHECK(example1_database(4).size() == 8);
    CHECK(active_domain(example1_database(4)).size() == 4);
    // The boundary wraps: one loop fact for a single constant.
    Database d1 = example1_database(1);
    CHECK(d1.size() == 1);
    CHECK(d1.contains(Fact{"A", {C("a0"), C("a0")}}));

    RuleSet ex1 = example1_rules();
    const Ded& rule = ex1.rules.at(0);
    CHECK(rule.body.size() == 8);
    CHECK(rule.disjuncts.size() == 7); // Goal plus six collapses
}

TEST_CASE("the complete-graph counterexample data") {
    RuleSet p10 = prop10_rules();
    const Ded& rule = p10.rules.at(0);
    CHECK(rule.body.size() == 16);
    CHECK(rule.disjuncts.size() == 7);
    CHECK(prop10_database().size() == 4);
}

TEST_CASE("first-order evaluation of the clique rewriting") {
    CHECK_FALSE(clique4_fo_eval(prop10_database()));
    CHECK_FALSE(clique4_fo_eval(Database{Schema{{"A", 2}}}));

    Database full(Schema{{"A", 2}});
    std::vector<Term> four{C("a"), C("b"), C("c"), C("d")};
    for (const auto& x : four)
        for (const auto& y : four) full.add("A", {x, y});
    CHECK(clique4_fo_eval(full));

    // Removing one self loop breaks it.
    Database almost(Schema{{"A", 2}});
    for (const auto& x : four)
        for (const auto& y : four)
            if (!(x == C("d") && y == C("d"))) almost.add("A", {x, y});
    CHECK_FALSE(clique4_fo_eval(almost));

    // Agreement with the exhaustive oracle on seeded random databases.
    std::mt19937_64 rng(41);
    std::vector<Term> consts{C("a"), C("b"), C("c"), C("d"), C("e")};
    RuleSet p10 = prop10_rules();
    for (int i = 0; i < 60; ++i) {
        Database db = random_database(rng, Schema{{"A", 2}}, consts, 22);
        CHECK(clique4_fo_eval(db) == brute_force_entails(db, p10, goal()));
    }
}

TEST_CASE("finite universal-model prefixes") {
    Schema qsch{{"Q", 2}};
    Database db(Schema{{"E", 1}});
    db.add("E", {C("a")});

    SUBCASE("nullary query freezes to a single fact") {
        Database u = universal_model(db, {parse_bcq("? Goal.")});
        CHECK(u.size() == 1);
        CHECK(u.contains(Fact{"Goal", {}}));
    }

    SUBCASE("copies share constants but not nulls") {
        Bcq q = parse_bcq("? Q(X, a).");
        Database u = universal_model(db, {q, q});
        CHECK(u.size() == 2);
        CHECK(active_domain(u) == std::set<Term>{C("a")});
        std::set<Term> nulls;
        for (const auto& t : u.terms())
            if (t.is_null()) nulls.insert(t);
        CHECK(nulls.size() == 2);
    }

    SUBCASE("queries implied by a listed conjunction hold in the prefix") {
        std::vector<Bcq> listed = {parse_bcq("? Q(X, a)."), parse_bcq("? Q(a, Y)."),
                                   parse_bcq("? Q(X, a), Q(a, Y).")};
        Database u = universal_model(db, listed);
        for (const auto& q : listed) CHECK(evaluate(q, u));
        CHECK(evaluate(parse_bcq("? Q(X, Y)."), u));
        CHECK_FALSE(evaluate(parse_bcq("? Q(a, a)."), u));
    }

    SUBCASE("constants outside the domain are rejected") {
        CHECK_THROWS_AS(universal_model(db, {parse_bcq("? Q(z, z).")}),
                        std::invalid_argument);
    }
}

TEST_CASE("closure checking treats the sample as three-valued") {
    Schema dsch{{"P", 1}};
    Schema qsch{{"Q1", 0}, {"Q2", 0}};

    OntologySample sample;
    sample.schemaD = dsch;
    sample.schemaQ = qsch;
    Database pa(dsch);
    pa.add("P", {C("a")});
    sample.databases = {pa};
    sample.queries = {parse_bcq("? Q1."), parse_bcq("? Q2."), parse_bcq("? Q1, Q2.")};

    SUBCASE("a decided missing conjunction is a violation") {
        sample.pairs = {{0, 0}, {0, 1}}; // both conjuncts, not the conjunction
        CheckReport r = check_ocqa_closure(sample, CheckBudget{100, 1});
        CHECK_FALSE(r.passed());
    }

    SUBCASE("an undecided conjunction is not reported") {
        sample.queries.pop_back(); // conjunction no longer in the universe
        sample.pairs = {{0, 0}, {0, 1}};
        CheckReport r = check_ocqa_closure(sample, CheckBudget{100, 1});
        CHECK(r.passed());
    }

    SUBCASE("implication violations need both pairs decided") {
        // Q1&Q2 implies Q1; membership of the weaker query is decided and
        // absent, so this is a genuine violation.
        sample.pairs = {{0, 2}};
        CheckReport r = check_ocqa_closure(sample, CheckBudget{100, 1});
        CHECK_FALSE(r.passed());
    }

    SUBCASE("sem-built samples never violate the closures") {
        RuleSet ex1 = example1_rules();
        OntologySample sem;
        sem.schemaD = Schema{{"A", 2}};
        sem.schemaQ = Schema{{"Goal", 0}};
        std::mt19937_64 rng(47);
        std::vector<Term> consts{C("a"), C("b"), C("c"), C("d"), C("e")};
        for (int i = 0; i < 10; ++i)
            sem.databases.push_back(random_database(rng, sem.schemaD, consts, 20));
        sem.databases.push_back(example1_database(4));
        sem.databases.push_back(example1_database(3));
        sem.queries = {goal(), parse_bcq("? Goal, Goal.")};
        for (size_t d = 0; d < sem.databases.size(); ++d)
            for (size_t q = 0; q < sem.queries.size(); ++q)
                if (brute_force_entails(sem.databases[d], ex1, sem.queries[q]))
                    sem.pairs.emplace_back(d, q);
        CheckReport r = check_ocqa_closure(sem, CheckBudget{5000, 47});
        CHECK(r.passed());
        CHECK(r.checks > 0);
    }
}

TEST_CASE("homomorphism preservation on equality-free rules") {
    RuleSet dtgds = parse_rules("A(X, Y) -> R(X). R(X) -> S(X) | T(X).");
    CheckReport r = check_hom_preservation(dtgds, CheckBudget{60, 7, ChaseBounds{60, 8000}});
    CHECK(r.passed());
    CHECK(r.checks > 0);

    CHECK_THROWS_AS(check_hom_preservation(example1_rules(), CheckBudget{}),
                    std::invalid_argument);
}

TEST_CASE("product preservation on single-head rules") {
    RuleSet eds = parse_rules("A(X, Y) -> A(Y, X). A(X, X) -> Goal.");
    CheckReport r = check_product_preservation(eds, CheckBudget{60, 11});
    CHECK(r.passed());
    CHECK(r.checks > 0);

    CHECK_THROWS_AS(check_product_preservation(prop10_rules(), CheckBudget{}),
                    std::invalid_argument);
}

TEST_CASE("domino systems encode to two binary relations") {
    DominoSystem s;
    s.dominos = {"d"};
    s.horizontal = {{"d", "d"}};
    s.vertical = {{"d", "d"}};
    Database db = domino_to_database(s);
    CHECK(db.size() == 2);
    CHECK(db.contains(Fact{"H", {C("d"), C("d")}}));
    CHECK(db.contains(Fact{"V", {C("d"), C("d")}}));

    Database empty = domino_to_database(DominoSystem{{"d", "e"}, {}, {}});
    CHECK(empty.empty());
    CHECK(empty.schema().has("H"));
    CHECK(empty.schema().has("V"));

    DominoSystem bigger = s;
    bigger.dominos.insert("e");
    bigger.horizontal.insert({"d", "e"});
    Database db2 = domino_to_database(bigger);
    for (const auto& f : db.facts()) CHECK(db2.contains(f));
}

TEST_CASE("the four-cycle ontology is not closed under arbitrary homomorphisms") {
    // Collapsing the four-cycle onto a loop loses the goal: the documented
    // negative example behind the DTGD separation.
    RuleSet ex1 = example1_rules();
    Database d4 = example1_database(4);
    Database loop(Schema{{"A", 2}});
    loop.add("A", {C("z"), C("z")});

    CHECK(find_homomorphism(d4, loop, {}, false).has_value()); // non-injective collapse
    CHECK(brute_force_entails(d4, ex1, goal()));
    CHECK_FALSE(brute_force_entails(loop, ex1, goal()));
}

TEST_CASE("the universal model decides queries componentwise") {
    // A query holds in the disjoint-union
    // prefix exactly when each of its prime components is implied by some
    // listed query.
    std::mt19937_64 rng(53);
    Schema qsch{{"Q", 2}, {"R", 1}};
    Database db(Schema{{"E", 1}});
    db.add("E", {C("a")});
    std::vector<Term> adom{C("a")};

    for (int round = 0; round < 25; ++round) {
        std::vector<Bcq> listed;
        size_t n = 1 + rng() % 3;
        for (size_t i = 0; i < n; ++i) listed.push_back(random_bcq(rng, qsch, adom, 2, 2));
        Database u = universal_model(db, listed);

        for (int probe = 0; probe < 8; ++probe) {
            Bcq q = random_bcq(rng, qsch, adom, 3, 3);
            bool expected = true;
            for (const auto& comp : prime_components(q)) {
                bool covered = false;
                for (const auto& lq : listed)
                    if (implies(lq, comp)) covered = true;
                if (!covered) expected = false;
            }
            CHECK(evaluate(q, u) == expected);
        }
    }
}
