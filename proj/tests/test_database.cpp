#include "dedchase/database.hpp"
#include "dedchase/homomorphism.hpp"
#include "dedchase/lab.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace dedchase;

namespace {

Term C(const std::string& n) { return Term::constant(n); }

Database db_of(Schema s, std::vector<Fact> facts) {
    Database db(std::move(s));
    for (auto& f : facts) db.add(std::move(f));
    return db;
}

// Exhaustive mapping enumeration, used as the oracle for the backtracking
// matcher on small inputs: every function from src terms to dst terms.
std::vector<Binding> oracle_homomorphisms(const Database& src, const Database& dst,
                                          const std::set<Term>& fixed, bool injective) {
    std::set<Term> src_terms = src.terms();
    std::set<Term> dst_terms = dst.terms();
    std::vector<Term> domain(src_terms.begin(), src_terms.end());
    std::vector<Term> range(dst_terms.begin(), dst_terms.end());
    std::vector<Binding> out;
    if (domain.empty()) {
        bool ok = true;
        for (const auto& f : src.facts())
            if (!dst.contains(f)) ok = false;
        if (ok) out.push_back({});
        return out;
    }
    if (range.empty()) return out;
    std::vector<size_t> idx(domain.size(), 0);
    for (;;) {
        Binding h;
        for (size_t i = 0; i < domain.size(); ++i) h[domain[i]] = range[idx[i]];
        bool ok = true;
        for (const auto& c : fixed)
            if (h.count(c) && !(h.at(c) == c)) ok = false;
        if (ok && injective) {
            std::set<Term> seen;
            for (const auto& [k, v] : h)
                if (!seen.insert(v).second) ok = false;
        }
        if (ok) {
            for (const auto& f : src.facts()) {
                Fact g{f.relation, {}};
                for (const auto& t : f.args) g.args.push_back(h.at(t));
                if (!dst.contains(g)) { ok = false; break; }
            }
        }
        if (ok) out.push_back(std::move(h));
        size_t pos = domain.size();
        bool done = true;
        while (pos-- > 0) {
            if (++idx[pos] < range.size()) { done = false; break; }
            idx[pos] = 0;
        }
        if (done) break;
    }
    return out;
}

} // namespace

TEST_CASE("term ordering is kind-major") {
    CHECK(Term::constant("b") < Term::variable("A"));
    CHECK(Term::variable("Z") < Term::null(0));
    CHECK(Term::null(1) < Term::null(2));
    CHECK(Term::constant("a") < Term::constant("b"));
}

TEST_CASE("active domain excludes nulls") {
    Database empty{Schema{{"E", 1}}};
    CHECK(active_domain(empty).empty());

    Database single = db_of(Schema{{"E", 1}}, {{"E", {C("a")}}});
    CHECK(active_domain(single) == std::set<Term>{C("a")});

    Database d4 = example1_database(4);
    CHECK(active_domain(d4) ==
          std::set<Term>{C("a0"), C("a1"), C("a2"), C("a3")});
    CHECK(d4.size() == 8);

    Database with_null = db_of(Schema{{"Q", 2}}, {{"Q", {Term::null(0), C("a")}}});
    CHECK(active_domain(with_null) == std::set<Term>{C("a")});
}

TEST_CASE("schema rejects arity clashes") {
    Schema s;
    s.add("R", 2);
    CHECK_THROWS_AS(s.add("R", 3), std::invalid_argument);
    Database db(Schema{{"R", 2}});
    CHECK_THROWS_AS(db.add("R", {C("a")}), std::invalid_argument);
    CHECK_THROWS_AS(db.add("S", {C("a")}), std::invalid_argument);
}

TEST_CASE("homomorphisms match the exhaustive oracle") {
    Schema s{{"A", 2}};
    Database ab = db_of(s, {{"A", {C("a"), C("b")}}});
    Database cc = db_of(s, {{"A", {C("c"), C("c")}}});

    auto collapse = all_homomorphisms(ab, cc, {}, false);
    REQUIRE(collapse.size() == 1);
    CHECK(collapse[0].at(C("a")) == C("c"));
    CHECK(collapse[0].at(C("b")) == C("c"));
    CHECK(all_homomorphisms(ab, cc, {}, true).empty());

    // Identity is found on the four-cycle.
    Database d4 = example1_database(4);
    bool identity = false;
    for (const auto& h : all_homomorphisms(d4, d4, {}, true)) {
        bool id = true;
        for (const auto& [k, v] : h)
            if (!(k == v)) id = false;
        if (id) identity = true;
    }
    CHECK(identity);

    // Frozen-query style source with a fixed constant.
    Database src = db_of(Schema{{"Q", 2}}, {{"Q", {Term::null(0), C("a")}}});
    Database dst = db_of(Schema{{"Q", 2}}, {{"Q", {C("b"), C("a")}}});
    auto found = all_homomorphisms(src, dst, {C("a")}, false);
    REQUIRE(found.size() == 1);
    CHECK(found[0].at(Term::null(0)) == C("b"));

    // Randomized agreement with the oracle.
    std::mt19937_64 rng(7);
    Schema rnd{{"P", 1}, {"R", 2}};
    std::vector<Term> consts{C("a"), C("b"), C("c")};
    for (int i = 0; i < 60; ++i) {
        Database x = random_database(rng, rnd, consts, 3);
        Database y = random_database(rng, rnd, consts, 4);
        for (bool inj : {false, true}) {
            auto got = all_homomorphisms(x, y, {}, inj);
            auto expect = oracle_homomorphisms(x, y, {}, inj);
            CHECK(got.size() == expect.size());
        }
    }
}

TEST_CASE("homomorphism composition is a homomorphism") {
    std::mt19937_64 rng(11);
    Schema s{{"P", 1}, {"R", 2}};
    std::vector<Term> consts{C("a"), C("b"), C("c")};
    int composed = 0;
    for (int i = 0; i < 40; ++i) {
        Database a = random_database(rng, s, consts, 3);
        Database b = random_database(rng, s, consts, 4);
        Database c = random_database(rng, s, consts, 4);
        auto h = find_homomorphism(a, b, {}, false);
        auto g = find_homomorphism(b, c, {}, false);
        if (!h || !g) continue;
        ++composed;
        for (const auto& f : a.facts()) {
            Fact img{f.relation, {}};
            for (const auto& t : f.args) img.args.push_back(g->at(h->at(t)));
            CHECK(c.contains(img));
        }
    }
    CHECK(composed > 0);
}

TEST_CASE("isomorphism basics and equivalence on random databases") {
    Database d3 = example1_database(3);
    Database d4 = example1_database(4);
    CHECK(is_isomorphic(d3, d3));
    CHECK_FALSE(is_isomorphic(d3, d4));

    Schema s{{"A", 2}};
    CHECK(is_isomorphic(db_of(s, {{"A", {C("a"), C("b")}}}),
                        db_of(s, {{"A", {C("c"), C("d")}}})));
    CHECK_FALSE(is_isomorphic(db_of(s, {{"A", {C("a"), C("b")}}}),
                              db_of(s, {{"A", {C("c"), C("c")}}})));

    // Equivalence relation on random small databases.
    std::mt19937_64 rng(3);
    std::vector<Term> consts{C("a"), C("b"), C("c"), C("d"), C("e")};
    std::vector<Database> dbs;
    for (int i = 0; i < 12; ++i) dbs.push_back(random_database(rng, s, consts, 8));
    for (const auto& x : dbs) CHECK(is_isomorphic(x, x));
    for (const auto& x : dbs)
        for (const auto& y : dbs) CHECK(is_isomorphic(x, y) == is_isomorphic(y, x));
    for (const auto& x : dbs)
        for (const auto& y : dbs)
            for (const auto& z : dbs)
                if (is_isomorphic(x, y) && is_isomorphic(y, z)) CHECK(is_isomorphic(x, z));
}

TEST_CASE("direct product follows the pairing definition") {
    Schema s{{"A", 2}};
    Database empty(s);
    Database j = db_of(s, {{"A", {C("c"), C("d")}}});
    CHECK(direct_product(empty, j).empty());

    Database single = direct_product(db_of(s, {{"A", {C("a"), C("b")}}}), j);
    REQUIRE(single.size() == 1);
    CHECK(single.contains(Fact{"A", {C("a*c"), C("b*d")}}));

    Database dprime = prop10_database();
    Database squared = direct_product(dprime, dprime);
    CHECK(squared.size() == 16);
    CHECK(active_domain(squared).size() == 4);

    // Defining biconditional, checked exhaustively over the pair domain.
    auto left = active_domain(dprime);
    for (const auto& a1 : left)
        for (const auto& b1 : left)
            for (const auto& a2 : left)
                for (const auto& b2 : left) {
                    bool in_product = squared.contains(
                        Fact{"A", {C(a1.name() + "*" + b1.name()),
                                   C(a2.name() + "*" + b2.name())}});
                    bool expected = dprime.contains(Fact{"A", {a1, a2}}) &&
                                    dprime.contains(Fact{"A", {b1, b2}});
                    CHECK(in_product == expected);
                }

    CHECK_THROWS_AS(direct_product(Database{Schema{{"B", 1}}}, j), std::invalid_argument);
}

TEST_CASE("disjoint union renames apart and embeds each part") {
    Schema s{{"Q", 2}};
    Database part1 = db_of(s, {{"Q", {Term::null(0), C("a")}}});
    Database part2 = db_of(s, {{"Q", {Term::null(0), C("a")}}});

    Database shared = disjoint_union_over({C("a")}, {part1, part2});
    CHECK(shared.size() == 2);
    CHECK(active_domain(shared) == std::set<Term>{C("a")});
    std::set<Term> nulls;
    for (const auto& t : shared.terms())
        if (t.is_null()) nulls.insert(t);
    CHECK(nulls.size() == 2);

    Schema p{{"P", 1}};
    Database pa = db_of(p, {{"P", {C("a")}}});
    Database apart = disjoint_union_over({}, {pa, pa});
    CHECK(apart.size() == 2);
    CHECK(active_domain(apart).size() == 2); // a copied apart, a not shared

    Database single = disjoint_union_over({}, {pa});
    CHECK(is_isomorphic(single, pa));

    // Each part embeds injectively fixing the shared constants.
    std::mt19937_64 rng(19);
    std::vector<Term> consts{C("a"), C("b"), C("c")};
    for (int i = 0; i < 20; ++i) {
        std::vector<Database> parts;
        for (int k = 0; k < 3; ++k) parts.push_back(random_database(rng, s, consts, 3));
        std::set<Term> cset{C("a")};
        Database u = disjoint_union_over(cset, parts);
        for (const auto& part : parts)
            CHECK(find_homomorphism(part, u, cset, true).has_value());
    }
}

TEST_CASE("restrict keeps exactly the chosen relations") {
    Schema s{{"E", 1}, {"Q", 2}};
    Database db = db_of(s, {{"E", {C("a")}}, {"Q", {C("a"), C("b")}}});
    Database q_only = restrict(db, Schema{{"Q", 2}});
    CHECK(q_only.size() == 1);
    CHECK(q_only.contains(Fact{"Q", {C("a"), C("b")}}));
    CHECK(restrict(db, db.schema()) == db);
    CHECK(restrict(db, Schema{}).empty());
    CHECK_THROWS_AS(restrict(db, Schema{{"X", 1}}), std::invalid_argument);
}
