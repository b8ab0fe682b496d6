#include "dedchase/database.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dedchase {

Schema::Schema(std::initializer_list<std::pair<std::string, unsigned>> rels) {
    for (const auto& [name, ar] : rels) add(name, ar);
}

void Schema::add(const std::string& name, unsigned arity) {
    auto it = arity_.find(name);
    if (it != arity_.end()) {
        if (it->second != arity)
            throw std::invalid_argument("relation " + name + " redeclared with arity " +
                                        std::to_string(arity) + " (was " +
                                        std::to_string(it->second) + ")");
        return;
    }
    arity_.emplace(name, arity);
    order_.push_back(name);
}

unsigned Schema::arity(const std::string& name) const {
    auto it = arity_.find(name);
    if (it == arity_.end())
        throw std::out_of_range("unknown relation symbol: " + name);
    return it->second;
}

std::optional<unsigned> Schema::arity_of(const std::string& name) const {
    auto it = arity_.find(name);
    if (it == arity_.end()) return std::nullopt;
    return it->second;
}

unsigned Schema::max_arity() const {
    unsigned m = 0;
    for (const auto& [name, ar] : arity_) m = std::max(m, ar);
    return m;
}

bool Schema::contains(const Schema& other) const {
    for (const auto& name : other.symbols())
        if (arity_of(name) != other.arity_of(name)) return false;
    return true;
}

Schema Schema::united(const Schema& a, const Schema& b) {
    Schema s = a;
    for (const auto& name : b.symbols()) s.add(name, b.arity(name));
    return s;
}

std::string Fact::str() const {
    std::ostringstream os;
    os << relation;
    if (!args.empty()) {
        os << "(";
        for (size_t i = 0; i < args.size(); ++i) {
            if (i) os << ", ";
            os << args[i].str();
        }
        os << ")";
    }
    return os.str();
}

Database::Database(Schema schema, std::set<Fact> facts) : schema_(std::move(schema)) {
    for (const auto& f : facts) add(f);
}

Database::Database(const Database& other) : schema_(other.schema_), facts_(other.facts_) {
    for (const auto& f : facts_) index_[f.relation].push_back(&f);
}

Database& Database::operator=(const Database& other) {
    if (this == &other) return *this;
    schema_ = other.schema_;
    facts_ = other.facts_;
    index_.clear();
    for (const auto& f : facts_) index_[f.relation].push_back(&f);
    return *this;
}

const std::vector<const Fact*>& Database::facts_of(const std::string& relation) const {
    static const std::vector<const Fact*> kEmpty;
    auto it = index_.find(relation);
    return it == index_.end() ? kEmpty : it->second;
}

void Database::add(Fact f) {
    auto ar = schema_.arity_of(f.relation);
    if (!ar) throw std::invalid_argument("fact over undeclared relation: " + f.relation);
    if (*ar != f.args.size())
        throw std::invalid_argument("arity mismatch for " + f.relation + ": got " +
                                    std::to_string(f.args.size()) + ", declared " +
                                    std::to_string(*ar));
    for (const auto& t : f.args)
        if (t.is_variable())
            throw std::invalid_argument("facts must be variable-free: " + f.str());
    auto [it, fresh] = facts_.insert(std::move(f));
    if (fresh) {
        auto& v = index_[it->relation];
        const Fact* p = &*it;
        auto pos = std::lower_bound(v.begin(), v.end(), p,
                                    [](const Fact* a, const Fact* b) { return *a < *b; });
        v.insert(pos, p);
    }
}

void Database::add(const std::string& relation, std::vector<Term> args) {
    add(Fact{relation, std::move(args)});
}

std::set<Term> Database::terms() const {
    std::set<Term> out;
    for (const auto& f : facts_)
        for (const auto& t : f.args) out.insert(t);
    return out;
}

bool Database::ground() const {
    for (const auto& f : facts_)
        for (const auto& t : f.args)
            if (!t.is_constant()) return false;
    return true;
}

std::string Database::str() const {
    std::ostringstream os;
    for (const auto& f : facts_) os << f.str() << ".\n";
    return os.str();
}

std::set<Term> active_domain(const Database& db) {
    std::set<Term> out;
    for (const auto& f : db.facts())
        for (const auto& t : f.args)
            if (t.is_constant()) out.insert(t);
    return out;
}

Database restrict(const Database& db, const Schema& s) {
    if (!db.schema().contains(s))
        throw std::invalid_argument("restrict: schema is not a subschema");
    Database out(s);
    for (const auto& f : db.facts())
        if (s.has(f.relation)) out.add(f);
    return out;
}

namespace {

// Pair constants print as "left*right"; '*' is banned from user identifiers,
// so nested products stay parseable (quoted) and reproducible.
Term pair_constant(const Term& a, const Term& b) {
    return Term::constant(a.name() + "*" + b.name());
}

} // namespace

Database direct_product(const Database& lhs, const Database& rhs) {
    if (!(lhs.schema() == rhs.schema()))
        throw std::invalid_argument("direct_product: schema mismatch");
    if (!lhs.ground() || !rhs.ground())
        throw std::invalid_argument("direct_product: inputs must be ground");
    Database out(lhs.schema());
    for (const auto& f : lhs.facts()) {
        for (const auto& g : rhs.facts()) {
            if (f.relation != g.relation) continue;
            std::vector<Term> args;
            args.reserve(f.args.size());
            for (size_t i = 0; i < f.args.size(); ++i)
                args.push_back(pair_constant(f.args[i], g.args[i]));
            out.add(f.relation, std::move(args));
        }
    }
    return out;
}

Database disjoint_union_over(const std::set<Term>& shared,
                             const std::vector<Database>& parts) {
    Schema schema;
    if (!parts.empty()) {
        schema = parts.front().schema();
        for (const auto& p : parts)
            if (!(p.schema() == schema))
                throw std::invalid_argument("disjoint_union_over: parts must share a schema");
    }
    Database out(schema);
    uint32_t next_null = 0;
    for (size_t idx = 0; idx < parts.size(); ++idx) {
        std::map<Term, Term> rename;
        for (const auto& t : parts[idx].terms()) {
            if (t.is_constant()) {
                rename[t] = shared.count(t)
                                ? t
                                : Term::constant(t.name() + "@" + std::to_string(idx));
            } else if (t.is_null()) {
                rename[t] = Term::null(next_null++);
            }
        }
        for (const auto& f : parts[idx].facts()) {
            std::vector<Term> args;
            args.reserve(f.args.size());
            for (const auto& t : f.args) args.push_back(rename.at(t));
            out.add(f.relation, std::move(args));
        }
    }
    return out;
}

} // namespace dedchase
