#include "dedchase/lab.hpp"
#include "dedchase/parser.hpp"
#include "dedchase/query.hpp"

#include <doctest.h>

#include <random>

using namespace dedchase;

namespace {

Term C(const std::string& n) { return Term::constant(n); }
Term X(const std::string& n) { return Term::variable(n); }

Bcq q_of(const std::string& text) { return parse_bcq(text); }

} // namespace

TEST_CASE("query files parse") {
    Bcq q = q_of("? Q(X, a).");
    REQUIRE(q.atoms.size() == 1);
    CHECK(q.variables() == std::set<Term>{X("X")});
    CHECK(q.constants() == std::set<Term>{C("a")});

    Cq p = parse_cq("?(X) Q(X, Y).");
    CHECK(p.free_variables == std::vector<Term>{X("X")});
    CHECK(p.existential_variables() == std::set<Term>{X("Y")});

    CHECK_THROWS_AS(parse_bcq("?(X) Q(X)."), SemanticError);
    CHECK_THROWS_AS(parse_bcq("? Q(X) Q(X)."), ParseError);
}

TEST_CASE("freezing renames existential variables to nulls") {
    Database f = freeze(q_of("? Q(X, a)."));
    REQUIRE(f.size() == 1);
    CHECK(f.contains(Fact{"Q", {Term::null(0), C("a")}}));

    Database ground = freeze(q_of("? Q(a, b)."));
    CHECK(ground.contains(Fact{"Q", {C("a"), C("b")}}));

    Database swap = freeze(q_of("? R(X, Y), R(Y, X)."));
    CHECK(swap.size() == 2);
    CHECK(swap.contains(Fact{"R", {Term::null(0), Term::null(1)}}));
    CHECK(swap.contains(Fact{"R", {Term::null(1), Term::null(0)}}));
}

TEST_CASE("prime components split on shared existential variables") {
    auto parts = prime_components(q_of("? Q(X, a), R(Y)."));
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].atoms.size() == 1);
    CHECK(parts[1].atoms.size() == 1);

    CHECK(prime_components(q_of("? R(X, Y), R(Y, X).")).size() == 1);

    // Ground atoms share no existential variable, even with a shared constant.
    auto ground = prime_components(q_of("? Q(a, b), Q(b, c)."));
    CHECK(ground.size() == 2);

    // Every component is implied by the query; the conjunction of all
    // components implies it back.
    std::mt19937_64 rng(5);
    Schema s{{"P", 1}, {"R", 2}};
    std::vector<Term> consts{C("a"), C("b")};
    for (int i = 0; i < 30; ++i) {
        Bcq q = random_bcq(rng, s, consts, 4, 3);
        auto comps = prime_components(q);
        REQUIRE(!comps.empty());
        Bcq conj = comps[0];
        for (size_t k = 1; k < comps.size(); ++k) conj = conjoin(conj, comps[k]);
        for (const auto& comp : comps) CHECK(implies(q, comp));
        CHECK(implies(conj, q));
        CHECK(implies(q, conj));
    }
}

TEST_CASE("implication via the homomorphism criterion") {
    Bcq qa = q_of("? Q(a, a).");
    Bcq qx = q_of("? Q(X, a).");
    CHECK(implies(qa, qa));
    CHECK(implies(qa, qx));
    CHECK_FALSE(implies(qx, qa));

    // Reflexive and transitive on random queries.
    std::mt19937_64 rng(13);
    Schema s{{"P", 1}, {"R", 2}};
    std::vector<Term> consts{C("a"), C("b")};
    std::vector<Bcq> qs;
    for (int i = 0; i < 10; ++i) qs.push_back(random_bcq(rng, s, consts, 3, 2));
    for (const auto& q : qs) CHECK(implies(q, q));
    for (const auto& q1 : qs)
        for (const auto& q2 : qs)
            for (const auto& q3 : qs)
                if (implies(q1, q2) && implies(q2, q3)) CHECK(implies(q1, q3));
}

TEST_CASE("conjunction renames apart and is sound") {
    Bcq qx = q_of("? Q(X, a).");
    Bcq rx = q_of("? R(X).");
    Bcq both = conjoin(qx, rx);
    CHECK(both.atoms.size() == 2);
    CHECK(both.variables().size() == 2); // X kept, the other renamed apart
    CHECK(equivalent(conjoin(qx, qx), qx));

    Bcq goal = q_of("? Goal.");
    CHECK(equivalent(conjoin(goal, goal), goal));

    std::mt19937_64 rng(29);
    Schema s{{"P", 1}, {"R", 2}};
    std::vector<Term> consts{C("a"), C("b")};
    for (int i = 0; i < 30; ++i) {
        Bcq q1 = random_bcq(rng, s, consts, 2, 2);
        Bcq q2 = random_bcq(rng, s, consts, 2, 2);
        Database inst = random_database(rng, s, consts, 5);
        CHECK(evaluate(conjoin(q1, q2), inst) ==
              (evaluate(q1, inst) && evaluate(q2, inst)));
    }
}

TEST_CASE("evaluation") {
    Schema goal_schema{{"Goal", 0}};
    Database with_goal(goal_schema);
    with_goal.add("Goal", {});
    CHECK(evaluate(q_of("? Goal."), with_goal));

    Schema s{{"Q", 2}};
    Database ba(s);
    ba.add("Q", {C("b"), C("a")});
    CHECK(evaluate(q_of("? Q(X, a)."), ba));
    Database ab(s);
    ab.add("Q", {C("a"), C("b")});
    CHECK_FALSE(evaluate(q_of("? Q(X, a)."), ab));

    // The frozen database is a canonical model of its query.
    std::mt19937_64 rng(31);
    Schema rnd{{"P", 1}, {"R", 2}};
    std::vector<Term> consts{C("a"), C("b")};
    for (int i = 0; i < 40; ++i) {
        Bcq q = random_bcq(rng, rnd, consts, 3, 2);
        CHECK(evaluate(q, freeze(q)));
    }
}
