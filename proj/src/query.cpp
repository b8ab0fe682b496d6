#include "dedchase/query.hpp"

#include "dedchase/homomorphism.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dedchase {

std::set<Term> Bcq::variables() const {
    std::set<Term> out;
    for (const auto& a : atoms)
        for (const auto& t : a.args)
            if (t.is_variable()) out.insert(t);
    return out;
}

std::set<Term> Bcq::constants() const {
    std::set<Term> out;
    for (const auto& a : atoms)
        for (const auto& t : a.args)
            if (t.is_constant()) out.insert(t);
    return out;
}

Schema Bcq::schema() const {
    Schema s;
    for (const auto& a : atoms) s.add(a.relation, a.args.size());
    return s;
}

std::string Bcq::str() const {
    std::ostringstream os;
    os << "? ";
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (i) os << ", ";
        os << atoms[i].str();
    }
    os << ".";
    return os.str();
}

std::set<Term> Cq::existential_variables() const {
    std::set<Term> free(free_variables.begin(), free_variables.end());
    std::set<Term> out;
    for (const auto& a : atoms)
        for (const auto& t : a.args)
            if (t.is_variable() && !free.count(t)) out.insert(t);
    return out;
}

Schema Cq::schema() const {
    Schema s;
    for (const auto& a : atoms) s.add(a.relation, a.args.size());
    return s;
}

Bcq Cq::instantiate(const std::vector<Term>& tuple) const {
    if (tuple.size() != free_variables.size())
        throw std::invalid_argument("tuple length does not match free variables");
    std::map<Term, Term> sub;
    for (size_t i = 0; i < tuple.size(); ++i) sub.emplace(free_variables[i], tuple[i]);
    Bcq out;
    for (const auto& a : atoms) {
        Atom b = a;
        for (auto& t : b.args) {
            auto it = sub.find(t);
            if (it != sub.end()) t = it->second;
        }
        out.atoms.push_back(std::move(b));
    }
    return out;
}

std::string Cq::str() const {
    std::ostringstream os;
    os << "?(";
    for (size_t i = 0; i < free_variables.size(); ++i) {
        if (i) os << ", ";
        os << free_variables[i].str();
    }
    os << ") ";
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (i) os << ", ";
        os << atoms[i].str();
    }
    os << ".";
    return os.str();
}

Database freeze(const Bcq& q) {
    std::map<Term, Term> to_null;
    uint32_t next = 0;
    for (const auto& v : q.variables()) to_null.emplace(v, Term::null(next++));
    Database out(q.schema());
    for (const auto& a : q.atoms) {
        std::vector<Term> args;
        args.reserve(a.args.size());
        for (const auto& t : a.args) {
            auto it = to_null.find(t);
            args.push_back(it == to_null.end() ? t : it->second);
        }
        out.add(a.relation, std::move(args));
    }
    return out;
}

std::vector<Bcq> prime_components(const Bcq& q) {
    const size_t n = q.atoms.size();
    std::vector<size_t> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](size_t a, size_t b) { parent[find(a)] = find(b); };

    std::map<Term, size_t> first_atom_with;
    for (size_t i = 0; i < n; ++i)
        for (const auto& t : q.atoms[i].args) {
            if (!t.is_variable()) continue;
            auto [it, fresh] = first_atom_with.emplace(t, i);
            if (!fresh) unite(i, it->second);
        }

    std::map<size_t, Bcq> components; // keyed by smallest atom index
    for (size_t i = 0; i < n; ++i) {
        size_t root = find(i);
        size_t key = i;
        for (size_t j = 0; j < i; ++j)
            if (find(j) == root) { key = j; break; }
        components[key].atoms.push_back(q.atoms[i]);
    }
    std::vector<Bcq> out;
    out.reserve(components.size());
    for (auto& [key, comp] : components) out.push_back(std::move(comp));
    return out;
}

bool implies(const Bcq& q, const Bcq& q2) {
    Database frozen_q = freeze(q);
    Database frozen_q2 = freeze(q2);
    return find_homomorphism(frozen_q2, frozen_q, q2.constants(), false).has_value();
}

bool equivalent(const Bcq& q, const Bcq& q2) {
    return implies(q, q2) && implies(q2, q);
}

Bcq conjoin(const Bcq& q, const Bcq& q2) {
    std::set<Term> taken = q.variables();
    std::map<Term, Term> rename;
    for (const auto& v : q2.variables()) {
        if (!taken.count(v)) {
            taken.insert(v);
            continue;
        }
        for (int k = 2;; ++k) {
            Term fresh = Term::variable(v.name() + "_" + std::to_string(k));
            if (!taken.count(fresh)) {
                rename.emplace(v, fresh);
                taken.insert(fresh);
                break;
            }
        }
    }
    Bcq out = q;
    for (const auto& a : q2.atoms) {
        Atom b = a;
        for (auto& t : b.args) {
            auto it = rename.find(t);
            if (it != rename.end()) t = it->second;
        }
        out.atoms.push_back(std::move(b));
    }
    return out;
}

bool evaluate(const Bcq& q, const Database& instance) {
    return find_homomorphism(freeze(q), instance, q.constants(), false).has_value();
}

RuleSet ontology_to_deds(const std::vector<std::pair<Database, Bcq>>& pairs) {
    RuleSet out;
    for (const auto& [db, q] : pairs) {
        auto adom = active_domain(db);
        if (db.empty() || adom.empty())
            throw std::invalid_argument(
                "ontology_to_deds: the empty database admits no rule (empty body)");
        for (const auto& c : q.constants())
            if (!adom.count(c))
                throw std::invalid_argument("ontology_to_deds: query constant " + c.str() +
                                            " outside adom(D)");

        std::map<Term, Term> to_var;
        for (const auto& c : adom) to_var.emplace(c, Term::variable("V" + c.name()));

        Ded rule;
        for (const auto& f : db.facts()) {
            Atom a{f.relation, {}};
            for (const auto& t : f.args) a.args.push_back(to_var.at(t));
            rule.body.push_back(std::move(a));
        }

        // First disjunct: q with the same constant replacement; the query's
        // own variables stay existential, renamed apart from the V-variables.
        std::map<Term, Term> qvar;
        uint32_t qi = 0;
        for (const auto& v : q.variables())
            qvar.emplace(v, Term::variable("Z" + std::to_string(qi++)));
        Disjunct head;
        for (const auto& a : q.atoms) {
            Atom b{a.relation, {}};
            for (const auto& t : a.args) {
                if (t.is_constant()) b.args.push_back(to_var.at(t));
                else b.args.push_back(qvar.at(t));
            }
            head.literals.push_back(std::move(b));
        }
        rule.disjuncts.push_back(std::move(head));

        // One equality disjunct per unordered pair of distinct constants.
        std::vector<Term> consts(adom.begin(), adom.end());
        for (size_t i = 0; i < consts.size(); ++i)
            for (size_t j = i + 1; j < consts.size(); ++j)
                rule.disjuncts.push_back(
                    Disjunct{{Atom::equality(to_var.at(consts[i]), to_var.at(consts[j]))}});

        collect_schema(rule, out.schema);
        out.rules.push_back(std::move(rule));
    }
    return out;
}

} // namespace dedchase
