#include "dedchase/models.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace dedchase {

namespace {

struct Bits {
    std::vector<uint64_t> w;

    explicit Bits(size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(size_t i) { w[i / 64] |= uint64_t(1) << (i % 64); }
    bool test(size_t i) const { return (w[i / 64] >> (i % 64)) & 1; }
    bool subset_of(const Bits& other) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~other.w[i]) return false;
        return true;
    }
    void or_with(const Bits& other) {
        for (size_t i = 0; i < w.size(); ++i) w[i] |= other.w[i];
    }
    friend bool operator==(const Bits&, const Bits&) = default;
};

// Ground truth tables for one rule: per variable assignment, the body mask
// and the surviving head options (each a mask of facts to require).
struct GroundRule {
    Bits body;
    std::vector<Bits> options;
};

struct HerbrandSetup {
    std::vector<Term> constants;
    Schema schema;
    std::vector<Fact> base;
    std::map<Fact, size_t> index;
    Bits db_mask;
    std::vector<size_t> free_atoms; // base positions not fixed by the database
    std::vector<GroundRule> ground; // never-violable assignments dropped
    std::vector<Bits> query_masks;  // satisfied iff some mask is a subset
};

void require_full(const RuleSet& rules) {
    for (const auto& r : rules.rules)
        for (size_t d = 0; d < r.disjuncts.size(); ++d)
            if (!r.existential_variables(d).empty())
                throw std::invalid_argument(
                    "model enumeration requires full rules (no existential variables)");
}

std::set<Term> rule_constants(const RuleSet& rules) {
    std::set<Term> out;
    for (const auto& r : rules.rules) {
        for (const auto& a : r.body)
            for (const auto& t : a.args)
                if (t.is_constant()) out.insert(t);
        for (const auto& d : r.disjuncts)
            for (const auto& lit : d.literals)
                for (const auto& t : lit.args)
                    if (t.is_constant()) out.insert(t);
    }
    return out;
}

// Enumerates assignments of `vars` over `constants` and calls fn(sigma).
template <typename F>
void for_each_assignment(const std::vector<Term>& vars, const std::vector<Term>& constants,
                         F&& fn) {
    std::map<Term, Term> sigma;
    if (vars.empty()) {
        fn(sigma);
        return;
    }
    if (constants.empty()) return;
    std::vector<size_t> idx(vars.size(), 0);
    for (;;) {
        for (size_t i = 0; i < vars.size(); ++i) sigma[vars[i]] = constants[idx[i]];
        fn(sigma);
        size_t pos = vars.size();
        bool done = true;
        while (pos-- > 0) {
            if (++idx[pos] < constants.size()) { done = false; break; }
            idx[pos] = 0;
        }
        if (done) break;
    }
}

Fact ground_atom(const Atom& a, const std::map<Term, Term>& sigma) {
    Fact f{a.relation, {}};
    f.args.reserve(a.args.size());
    for (const auto& t : a.args)
        f.args.push_back(t.is_variable() ? sigma.at(t) : t);
    return f;
}

HerbrandSetup build_setup(const Database& db, const RuleSet& rules, const Bcq* query,
                          size_t max_free_atoms) {
    require_full(rules);
    HerbrandSetup s;

    std::set<Term> consts = active_domain(db);
    for (const auto& c : rule_constants(rules)) consts.insert(c);
    if (query)
        for (const auto& c : query->constants()) consts.insert(c);
    s.constants.assign(consts.begin(), consts.end());

    s.schema = Schema::united(db.schema(), rules.schema);
    if (query) s.schema = Schema::united(s.schema, query->schema());

    // Herbrand base in declaration-then-lexicographic order.
    for (const auto& rel : s.schema.symbols()) {
        unsigned ar = s.schema.arity(rel);
        if (ar == 0) {
            s.base.push_back(Fact{rel, {}});
            continue;
        }
        if (s.constants.empty()) continue;
        std::vector<size_t> idx(ar, 0);
        for (;;) {
            Fact f{rel, {}};
            for (size_t i = 0; i < ar; ++i) f.args.push_back(s.constants[idx[i]]);
            s.base.push_back(std::move(f));
            size_t pos = ar;
            bool done = true;
            while (pos-- > 0) {
                if (++idx[pos] < s.constants.size()) { done = false; break; }
                idx[pos] = 0;
            }
            if (done) break;
        }
    }
    for (size_t i = 0; i < s.base.size(); ++i) s.index.emplace(s.base[i], i);

    s.db_mask = Bits(s.base.size());
    for (const auto& f : db.facts()) s.db_mask.set(s.index.at(f));
    for (size_t i = 0; i < s.base.size(); ++i)
        if (!s.db_mask.test(i)) s.free_atoms.push_back(i);

    if (s.free_atoms.size() > max_free_atoms)
        throw std::length_error("Herbrand enumeration guard exceeded: " +
                                std::to_string(s.free_atoms.size()) + " free atoms > " +
                                std::to_string(max_free_atoms));

    // Ground the rules.
    for (const auto& rule : rules.rules) {
        std::set<Term> var_set = rule.body_variables();
        std::vector<Term> vars(var_set.begin(), var_set.end());
        for_each_assignment(vars, s.constants, [&](const std::map<Term, Term>& sigma) {
            GroundRule g;
            g.body = Bits(s.base.size());
            for (const auto& a : rule.body) g.body.set(s.index.at(ground_atom(a, sigma)));
            bool trivially_satisfied = false;
            for (const auto& d : rule.disjuncts) {
                Bits opt(s.base.size());
                bool eq_ok = true;
                bool has_atoms = false;
                for (const auto& lit : d.literals) {
                    if (lit.is_equality()) {
                        Term a = lit.args[0].is_variable() ? sigma.at(lit.args[0]) : lit.args[0];
                        Term b = lit.args[1].is_variable() ? sigma.at(lit.args[1]) : lit.args[1];
                        if (!(a == b)) { eq_ok = false; break; }
                    } else {
                        opt.set(s.index.at(ground_atom(lit, sigma)));
                        has_atoms = true;
                    }
                }
                if (!eq_ok) continue;
                if (!has_atoms) { trivially_satisfied = true; break; }
                g.options.push_back(std::move(opt));
            }
            if (trivially_satisfied) return;
            s.ground.push_back(std::move(g));
        });
    }

    // Ground the query.
    if (query) {
        std::set<Term> var_set = query->variables();
        std::vector<Term> vars(var_set.begin(), var_set.end());
        for_each_assignment(vars, s.constants, [&](const std::map<Term, Term>& sigma) {
            Bits m(s.base.size());
            for (const auto& a : query->atoms) m.set(s.index.at(ground_atom(a, sigma)));
            if (std::find(s.query_masks.begin(), s.query_masks.end(), m) ==
                s.query_masks.end())
                s.query_masks.push_back(m);
        });
    }
    return s;
}

bool models_rules(const HerbrandSetup& s, const Bits& m) {
    for (const auto& g : s.ground) {
        if (!g.body.subset_of(m)) continue;
        bool ok = false;
        for (const auto& opt : g.options)
            if (opt.subset_of(m)) { ok = true; break; }
        if (!ok) return false;
    }
    return true;
}

bool satisfies_query(const HerbrandSetup& s, const Bits& m) {
    for (const auto& qm : s.query_masks)
        if (qm.subset_of(m)) return true;
    return false;
}

Bits embed(const HerbrandSetup& s, uint64_t free_mask) {
    Bits m = s.db_mask;
    for (size_t i = 0; i < s.free_atoms.size(); ++i)
        if ((free_mask >> i) & 1) m.set(s.free_atoms[i]);
    return m;
}

Database to_database(const HerbrandSetup& s, const Bits& m) {
    Database out(s.schema);
    for (size_t i = 0; i < s.base.size(); ++i)
        if (m.test(i)) out.add(s.base[i]);
    return out;
}

} // namespace

std::vector<Database> minimal_models(const Database& db, const RuleSet& rules,
                                     size_t max_free_atoms) {
    HerbrandSetup s = build_setup(db, rules, nullptr, max_free_atoms);
    const size_t n = s.free_atoms.size();

    std::vector<uint64_t> order(uint64_t(1) << n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [](uint64_t a, uint64_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });

    std::vector<Bits> minimal;
    for (uint64_t fm : order) {
        Bits m = embed(s, fm);
        bool dominated = false;
        for (const auto& mm : minimal)
            if (mm.subset_of(m)) { dominated = true; break; }
        if (dominated) continue;
        if (models_rules(s, m)) minimal.push_back(std::move(m));
    }

    std::vector<Database> out;
    out.reserve(minimal.size());
    for (const auto& m : minimal) out.push_back(to_database(s, m));
    return out;
}

bool brute_force_entails(const Database& db, const RuleSet& rules, const Bcq& query,
                         size_t max_free_atoms) {
    HerbrandSetup s = build_setup(db, rules, &query, max_free_atoms);
    const size_t n = s.free_atoms.size();
    const uint64_t total = uint64_t(1) << n;
    for (uint64_t fm = 0; fm < total; ++fm) {
        Bits m = embed(s, fm);
        if (satisfies_query(s, m)) continue;
        if (models_rules(s, m)) return false; // counter-model
    }
    return true;
}

} // namespace dedchase
