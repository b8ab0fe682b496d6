#include "dedchase/encode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dedchase {

std::string EncodedInput::pretty() const {
    std::string out;
    for (char c : symbols) {
        auto s = tape_from_char(c);
        out += s ? tape_pretty(*s) : std::string(1, c);
    }
    return out;
}

namespace {

Term canonical_variable(size_t i) { // 1-based
    return Term::variable("x" + std::to_string(i));
}

// Enumerates tuples over `terms` of length `arity`, leftmost position most
// significant, invoking fn per tuple.
template <typename F>
void for_each_tuple(const std::vector<Term>& terms, unsigned arity, F&& fn) {
    if (arity == 0) {
        fn(std::vector<Term>{});
        return;
    }
    if (terms.empty()) return;
    std::vector<size_t> idx(arity, 0);
    for (;;) {
        std::vector<Term> tuple;
        tuple.reserve(arity);
        for (size_t i = 0; i < arity; ++i) tuple.push_back(terms[idx[i]]);
        fn(std::move(tuple));
        size_t pos = arity;
        bool done = true;
        while (pos-- > 0) {
            if (++idx[pos] < terms.size()) { done = false; break; }
            idx[pos] = 0;
        }
        if (done) break;
    }
}

} // namespace

std::vector<Fact> database_atom_universe(const std::set<Term>& adom, const Schema& dsch) {
    std::vector<Term> terms(adom.begin(), adom.end());
    std::vector<Fact> out;
    for (const auto& rel : dsch.symbols())
        for_each_tuple(terms, dsch.arity(rel), [&](std::vector<Term> tuple) {
            out.push_back(Fact{rel, std::move(tuple)});
        });
    return out;
}

std::vector<Atom> query_atom_universe(const std::set<Term>& adom, size_t existentials,
                                      const Schema& qsch) {
    std::vector<Term> terms(adom.begin(), adom.end());
    for (size_t i = 1; i <= existentials; ++i) terms.push_back(canonical_variable(i));
    std::vector<Atom> out;
    for (const auto& rel : qsch.symbols())
        for_each_tuple(terms, qsch.arity(rel), [&](std::vector<Term> tuple) {
            out.push_back(Atom{rel, std::move(tuple)});
        });
    return out;
}

Bcq canonicalize_query(const Bcq& q) {
    std::map<Term, Term> rename;
    size_t i = 1;
    for (const auto& v : q.variables()) rename.emplace(v, canonical_variable(i++));
    Bcq out;
    for (const auto& a : q.atoms) {
        Atom b = a;
        for (auto& t : b.args) {
            auto it = rename.find(t);
            if (it != rename.end()) t = it->second;
        }
        out.atoms.push_back(std::move(b));
    }
    return out;
}

std::string binary(uint64_t k) {
    if (k == 0) return "0";
    std::string out;
    while (k) {
        out.push_back(char('0' + (k & 1)));
        k >>= 1;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

EncodedInput encode_input(const Database& db, const Bcq& q, const Schema& dsch,
                          const Schema& qsch) {
    if (!dsch.contains(db.schema()))
        throw std::invalid_argument("encode_input: database is not over the database schema");
    if (!qsch.contains(q.schema()))
        throw std::invalid_argument("encode_input: query is not over the query schema");
    auto adom = active_domain(db);
    for (const auto& c : q.constants())
        if (!adom.count(c))
            throw std::invalid_argument("encode_input: query constant " + c.str() +
                                        " outside adom(D)");

    Bcq canon = canonicalize_query(q);
    size_t e = canon.variables().size();
    std::set<Fact> dfacts = db.facts();
    std::set<Atom> qatoms(canon.atoms.begin(), canon.atoms.end());

    std::ostringstream os;
    os << binary(dsch.max_arity()) << '#' << binary(dsch.size()) << '#' << binary(adom.size())
       << '#';
    for (const auto& f : database_atom_universe(adom, dsch))
        os << (dfacts.count(f) ? 'i' : 'o');
    os << '#' << binary(qsch.max_arity()) << '#' << binary(qsch.size()) << '#' << binary(e)
       << '#';
    auto universe = query_atom_universe(adom, e, qsch);
    if (!universe.empty()) {
        os << '1'; // sentinel: the table reads back as a binary numeral
        for (const auto& a : universe) os << (qatoms.count(a) ? '1' : '0');
    }
    return EncodedInput{os.str()};
}

namespace {

uint64_t parse_binary_block(const std::string& s, const char* what) {
    if (s.empty()) throw std::invalid_argument(std::string("empty numeric block: ") + what);
    uint64_t v = 0;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument(std::string("bad digit in block ") + what);
        if (v >> 63) throw std::invalid_argument("numeric block overflow");
        v = (v << 1) | uint64_t(c - '0');
    }
    return v;
}

} // namespace

DecodedInput decode_input(const EncodedInput& in) {
    std::vector<std::string> blocks(1);
    for (char c : in.symbols) {
        if (c == '#') blocks.emplace_back();
        else blocks.back().push_back(c);
    }
    if (blocks.size() != 8)
        throw std::invalid_argument("expected 8 blocks, found " + std::to_string(blocks.size()));

    DecodedInput out;
    out.wd = parse_binary_block(blocks[0], "b(wd)");
    out.nd = parse_binary_block(blocks[1], "b(nd)");
    out.c = parse_binary_block(blocks[2], "b(c)");
    for (char c : blocks[3]) {
        if (c == 'i') out.dtable.push_back(true);
        else if (c == 'o') out.dtable.push_back(false);
        else throw std::invalid_argument("database table must use the barred alphabet");
    }
    out.wq = parse_binary_block(blocks[4], "b(wq)");
    out.nq = parse_binary_block(blocks[5], "b(nq)");
    out.e = parse_binary_block(blocks[6], "b(e)");
    if (!blocks[7].empty()) {
        if (blocks[7][0] != '1')
            throw std::invalid_argument("query table is missing its sentinel bit");
        for (size_t i = 1; i < blocks[7].size(); ++i) {
            if (blocks[7][i] != '0' && blocks[7][i] != '1')
                throw std::invalid_argument("bad digit in query table");
            out.qtable.push_back(blocks[7][i] == '1');
        }
    }
    return out;
}

uint64_t pair_number(uint64_t a, uint64_t b) {
    uint64_t s = a + b;
    if (s < a || s > (uint64_t(1) << 32)) throw std::overflow_error("pairing overflow");
    return s * (s + 1) / 2 + b;
}

std::pair<uint64_t, uint64_t> pair_inverse(uint64_t n) {
    // Largest w with w(w+1)/2 <= n.
    uint64_t w = static_cast<uint64_t>((std::sqrt(8.0 * double(n) + 1.0) - 1.0) / 2.0);
    while (w * (w + 1) / 2 > n) --w;
    while ((w + 1) * (w + 2) / 2 <= n) ++w;
    uint64_t t = w * (w + 1) / 2;
    uint64_t b = n - t;
    return {w - b, b};
}

uint64_t godel_number(const Bcq& q, const Database& db, const Schema& qsch) {
    if (!qsch.contains(q.schema()))
        throw std::invalid_argument("godel_number: query is not over the query schema");
    auto adom = active_domain(db);
    for (const auto& c : q.constants())
        if (!adom.count(c))
            throw std::invalid_argument("godel_number: query constant outside adom(D)");

    Bcq canon = canonicalize_query(q);
    uint64_t e = canon.variables().size();
    auto universe = query_atom_universe(adom, e, qsch);
    if (universe.size() > 62) throw std::overflow_error("query universe too large to number");
    std::set<Atom> qatoms(canon.atoms.begin(), canon.atoms.end());

    uint64_t v = 0;
    if (!universe.empty()) {
        v = 1; // sentinel
        for (const auto& a : universe) v = (v << 1) | uint64_t(qatoms.count(a) ? 1 : 0);
    }
    return pair_number(e, v);
}

GodelDecoded godel_decode(uint64_t n, uint64_t constant_count, const Schema& qsch) {
    auto [e, v] = pair_inverse(n);
    GodelDecoded out;
    out.e = e;
    uint64_t terms = constant_count + e;
    uint64_t size = 0;
    for (const auto& rel : qsch.symbols()) {
        uint64_t cells = 1;
        for (unsigned i = 0; i < qsch.arity(rel); ++i) {
            cells *= terms;
            if (cells > 62) throw std::overflow_error("query universe too large");
        }
        size += cells;
        if (size > 62) throw std::overflow_error("query universe too large");
    }
    if (size == 0) {
        if (v != 0) throw std::invalid_argument("nonzero table over an empty universe");
        return out;
    }
    if (v >> size != 1)
        throw std::invalid_argument("number does not decode to a table of size " +
                                    std::to_string(size));
    for (uint64_t i = 0; i < size; ++i)
        out.table.push_back((v >> (size - 1 - i)) & 1);
    return out;
}

Bcq bcq_from_table(const std::vector<bool>& table, const std::set<Term>& adom, uint64_t e,
                   const Schema& qsch) {
    auto universe = query_atom_universe(adom, e, qsch);
    if (universe.size() != table.size())
        throw std::invalid_argument("table size does not match the candidate universe");
    Bcq out;
    for (size_t i = 0; i < table.size(); ++i)
        if (table[i]) out.atoms.push_back(universe[i]);
    if (out.atoms.empty()) throw std::invalid_argument("empty table encodes no query");
    return out;
}

} // namespace dedchase
