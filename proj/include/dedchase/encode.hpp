#pragma once

#include "dedchase/database.hpp"
#include "dedchase/ntm.hpp"
#include "dedchase/query.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dedchase {

// The machine input for a database-query pair, in the ASCII alphabet.
struct EncodedInput {
    std::string symbols;

    std::string pretty() const; // renders the barred forms
    friend bool operator==(const EncodedInput&, const EncodedInput&) = default;
};

// Candidate ground atoms over the database schema: relations in declared
// schema order, argument tuples lexicographic over the sorted constants.
std::vector<Fact> database_atom_universe(const std::set<Term>& adom, const Schema& dsch);

// Candidate query atoms: argument tuples range over the sorted constants
// followed by the canonical variables x1..xe.
std::vector<Atom> query_atom_universe(const std::set<Term>& adom, size_t existentials,
                                      const Schema& qsch);

// Renames a query's existential variables (in variable order) to x1..xe.
Bcq canonicalize_query(const Bcq& q);

// Binary numeral of k, "0" for zero.
std::string binary(uint64_t k);

// The block encoding of (D, q):
//   b(wd) # b(nd) # b(c) # tvt(D) # b(wq) # b(nq) # b(e) # tvt(q)
// tvt(D) is the membership bit per candidate database atom in the barred
// alphabet; tvt(q) is the query membership table prefixed with a sentinel 1
// bit so it reads back as a binary numeral (empty when the query universe is
// empty). Requires const(q) ⊆ adom(D), D over dsch, q over qsch.
EncodedInput encode_input(const Database& db, const Bcq& q, const Schema& dsch,
                          const Schema& qsch);

struct DecodedInput {
    uint64_t wd = 0, nd = 0, c = 0;
    std::vector<bool> dtable;
    uint64_t wq = 0, nq = 0, e = 0;
    std::vector<bool> qtable; // sentinel stripped
};

// Splits and validates the block structure; throws std::invalid_argument on
// malformed input.
DecodedInput decode_input(const EncodedInput& in);

// Cantor pairing and its inverse.
uint64_t pair_number(uint64_t a, uint64_t b);
std::pair<uint64_t, uint64_t> pair_inverse(uint64_t n);

// Gödel number of q relative to (adom(D), qsch): pair_number(e, v), where v
// is tvt(q) read as a binary numeral (0 for an empty universe).
uint64_t godel_number(const Bcq& q, const Database& db, const Schema& qsch);

struct GodelDecoded {
    uint64_t e = 0;
    std::vector<bool> table;
};
// Recovers e and the membership table; needs the constant count to size the
// candidate universe. Throws on numbers that decode to no valid table.
GodelDecoded godel_decode(uint64_t n, uint64_t constant_count, const Schema& qsch);

// Rebuilds the canonical BCQ from a decoded table (at least one bit set).
Bcq bcq_from_table(const std::vector<bool>& table, const std::set<Term>& adom, uint64_t e,
                   const Schema& qsch);

} // namespace dedchase
