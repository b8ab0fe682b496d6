#pragma once

#include "dedchase/term.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dedchase {

// Relation symbols with fixed arities. Declaration order is preserved; it is
// the enumeration order used by the input encoding.
class Schema {
public:
    Schema() = default;
    Schema(std::initializer_list<std::pair<std::string, unsigned>> rels);

    // Adds a symbol; throws on redeclaration with a different arity.
    void add(const std::string& name, unsigned arity);
    bool has(const std::string& name) const { return arity_.count(name) != 0; }
    unsigned arity(const std::string& name) const;
    std::optional<unsigned> arity_of(const std::string& name) const;

    const std::vector<std::string>& symbols() const { return order_; }
    size_t size() const { return order_.size(); }
    unsigned max_arity() const;

    bool contains(const Schema& other) const; // other ⊆ this
    static Schema united(const Schema& a, const Schema& b);

    friend bool operator==(const Schema& a, const Schema& b) {
        return a.arity_ == b.arity_;
    }

private:
    std::vector<std::string> order_;
    std::map<std::string, unsigned> arity_;
};

// A variable-free relation atom.
struct Fact {
    std::string relation;
    std::vector<Term> args;

    friend std::strong_ordering operator<=>(const Fact&, const Fact&) = default;
    std::string str() const;
};

// A finite set of facts over a schema. User-facing databases are ground;
// instances holding labeled nulls arise from the chase and query freezing.
class Database {
public:
    Database() = default;
    explicit Database(Schema schema) : schema_(std::move(schema)) {}
    Database(Schema schema, std::set<Fact> facts);

    // The per-relation index holds pointers into facts_, so copies rebuild
    // it; moves keep the set nodes and stay cheap.
    Database(const Database& other);
    Database& operator=(const Database& other);
    Database(Database&&) = default;
    Database& operator=(Database&&) = default;

    const Schema& schema() const { return schema_; }
    const std::set<Fact>& facts() const { return facts_; }
    size_t size() const { return facts_.size(); }
    bool empty() const { return facts_.empty(); }
    bool contains(const Fact& f) const { return facts_.count(f) != 0; }

    // The facts of one relation, sorted by argument tuple.
    const std::vector<const Fact*>& facts_of(const std::string& relation) const;

    // Inserts a fact, checking relation and arity against the schema.
    void add(Fact f);
    void add(const std::string& relation, std::vector<Term> args);

    // All terms occurring in some fact (constants and nulls).
    std::set<Term> terms() const;
    bool ground() const;

    friend bool operator==(const Database& a, const Database& b) {
        return a.facts_ == b.facts_;
    }

    std::string str() const; // one fact per line, `R(a, b).`

private:
    Schema schema_;
    std::set<Fact> facts_;
    std::map<std::string, std::vector<const Fact*>> index_;
};

// adom(I): the constants occurring in I; labeled nulls excluded.
std::set<Term> active_domain(const Database& db);

// I restricted to the relation symbols of S. Requires S ⊆ I.schema.
Database restrict(const Database& db, const Schema& s);

// Direct product per the pairing construction: one fact per pair of facts
// over the same relation, with fresh pair constants named "left*right".
Database direct_product(const Database& lhs, const Database& rhs);

// Union of isomorphic copies of the parts where everything outside C is
// renamed apart per part (constants get an "@<index>" suffix, nulls are
// renumbered); constants in C are kept verbatim.
Database disjoint_union_over(const std::set<Term>& shared,
                             const std::vector<Database>& parts);

} // namespace dedchase
