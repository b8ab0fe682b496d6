#include "dedchase/compiler.hpp"

#include "dedchase/encode.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace dedchase {

namespace {

Term V(const std::string& name) { return Term::variable(name); }

Atom atom(std::string rel, std::vector<Term> args = {}) {
    return Atom{std::move(rel), std::move(args)};
}

Ded rule(std::vector<Atom> body, std::vector<Disjunct> head) {
    Ded r;
    r.body = std::move(body);
    r.disjuncts = std::move(head);
    return r;
}

Ded horn(std::vector<Atom> body, std::vector<Atom> head) {
    return rule(std::move(body), {Disjunct{std::move(head)}});
}

void push(RuleSet& rs, Ded r) {
    validate(r);
    collect_schema(r, rs.schema);
    rs.rules.push_back(std::move(r));
}

void append(RuleSet& into, const RuleSet& from) {
    for (const auto& r : from.rules) push(into, r);
}

std::string tape_suffix(TapeSym s) {
    switch (s) {
    case TapeSym::Zero: return "0";
    case TapeSym::One: return "1";
    case TapeSym::Blank: return "B";
    case TapeSym::Hash: return "H";
    case TapeSym::BarZero: return "O";
    case TapeSym::BarOne: return "I";
    }
    return "?";
}

std::string itape(TapeSym s) { return "ITape" + tape_suffix(s); }
std::string wtape(TapeSym s) { return "WTape" + tape_suffix(s); }

std::string state_symbol(const std::string& state) {
    for (char c : state)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw std::invalid_argument("machine state name must be an identifier: " + state);
    return "State_" + state;
}

// Builds a rule body that computes arithmetic values over the number spine.
// Every helper appends body atoms and returns the variable holding the
// result; values only bind once the chase has produced the needed facts.
struct BodyArith {
    std::vector<Atom> body;
    int fresh = 0;

    Term var() { return V("T" + std::to_string(fresh++)); }

    Term zero() {
        if (!zero_) {
            zero_ = var();
            body.push_back(atom("Min", {*zero_}));
        }
        return *zero_;
    }

    Term succ(const Term& t) {
        Term r = var();
        body.push_back(atom("Succ", {t, r}));
        return r;
    }

    // The spine element for a fixed small number.
    Term number(uint64_t k) {
        Term t = zero();
        for (uint64_t i = 0; i < k; ++i) t = succ(t);
        return t;
    }

    Term add(const Term& a, const Term& b) {
        Term r = var();
        body.push_back(atom("Add", {a, b, r}));
        return r;
    }

    // Binds r with add(a, r) = c, i.e. r = c - a.
    Term sub_from(const Term& c, const Term& a) {
        Term r = var();
        body.push_back(atom("Add", {a, r, c}));
        return r;
    }

    Term mul(const Term& a, const Term& b) {
        Term r = var();
        body.push_back(atom("Mul", {a, b, r}));
        return r;
    }

    Term len(const Term& t) {
        Term r = var();
        body.push_back(atom("Len", {t, r}));
        return r;
    }

    Term pow2(const Term& t) {
        Term r = var();
        body.push_back(atom("Pow2", {t, r}));
        return r;
    }

    Term tri(const Term& t) {
        Term r = var();
        body.push_back(atom("Tri", {t, r}));
        return r;
    }

    // Decomposes x as pair_number(e, v).
    std::pair<Term, Term> pair_dec(const Term& x) {
        Term e = var(), v = var();
        body.push_back(atom("PairDec", {x, e, v}));
        return {e, v};
    }

    void require_le(const Term& a, const Term& b) { body.push_back(atom("LE", {a, b})); }
    void require_lt(const Term& a, const Term& b) { body.push_back(atom("LT", {a, b})); }

private:
    std::optional<Term> zero_;
};

} // namespace

// ---------------------------------------------------------------------------

RuleSet gen_sigma_s(const Schema& dsch) {
    RuleSet rs;
    // Collecting the database constants, one rule per database relation.
    for (const auto& rel : dsch.symbols()) {
        unsigned ar = dsch.arity(rel);
        if (ar == 0) continue; // no constants to collect
        std::vector<Atom> head;
        Atom body_atom{rel, {}};
        for (unsigned i = 1; i <= ar; ++i) {
            Term x = V("X" + std::to_string(i));
            body_atom.args.push_back(x);
            head.push_back(atom("DC", {x}));
        }
        push(rs, horn({body_atom}, std::move(head)));
    }

    // The guessed linear order over DC.
    push(rs, rule({atom("DC", {V("X")}), atom("DC", {V("Y")})},
                  {Disjunct{{atom("LT", {V("X"), V("Y")})}},
                   Disjunct{{Atom::equality(V("X"), V("Y"))}},
                   Disjunct{{atom("LT", {V("Y"), V("X")})}}}));
    push(rs, horn({atom("LT", {V("X"), V("Y")}), atom("LT", {V("Y"), V("Z")})},
                  {atom("LT", {V("X"), V("Z")})}));
    push(rs, horn({atom("LT", {V("X"), V("X")})}, {atom("Undesired")}));
    push(rs, horn({atom("DC", {V("X")}), atom("DC", {V("Y")}), atom("LT", {V("X"), V("Y")})},
                  {atom("NotMin", {V("Y")})}));
    push(rs, horn({atom("DC", {V("X")}), atom("DC", {V("Y")}), atom("LT", {V("X"), V("Y")}),
                   atom("LT", {V("Y"), V("Z")})},
                  {atom("LTNotSucc", {V("X"), V("Z")})}));

    // The number spine: one Min seed per branch, extended forever. The seed
    // rule is blocked as soon as any Min exists, so branches stay on a single
    // chain of fresh nulls and the database constants never join it.
    push(rs, horn({atom("DC", {V("X")})}, {atom("Min", {V("M")}), atom("Num", {V("M")})}));
    push(rs, rule({atom("Min", {V("X")}), atom("Min", {V("Y")})},
                  {Disjunct{{Atom::equality(V("X"), V("Y"))}}}));
    push(rs, horn({atom("Min", {V("X")})},
                  {atom("Succ", {V("X"), V("Z")}), atom("LT", {V("X"), V("Z")})}));
    push(rs, horn({atom("Succ", {V("X"), V("Y")})},
                  {atom("Succ", {V("Y"), V("Z")}), atom("LT", {V("Y"), V("Z")})}));
    push(rs, horn({atom("Succ", {V("X"), V("Y")})},
                  {atom("Num", {V("X")}), atom("Num", {V("Y")})}));
    return rs;
}

RuleSet gen_sigma_num(const Schema& dsch) {
    RuleSet rs = gen_sigma_s(dsch);

    // Addition.
    push(rs, horn({atom("Num", {V("X")}), atom("Min", {V("Y")})},
                  {atom("Add", {V("X"), V("Y"), V("X")})}));
    push(rs, horn({atom("Add", {V("X"), V("Y"), V("Z")}), atom("Succ", {V("Y"), V("U")}),
                   atom("Succ", {V("Z"), V("V")})},
                  {atom("Add", {V("X"), V("U"), V("V")})}));

    // Multiplication.
    push(rs, horn({atom("Num", {V("X")}), atom("Min", {V("Y")})},
                  {atom("Mul", {V("X"), V("Y"), V("Y")})}));
    push(rs, horn({atom("Mul", {V("X"), V("Y"), V("Z")}), atom("Succ", {V("Y"), V("U")}),
                   atom("Add", {V("Z"), V("X"), V("W")})},
                  {atom("Mul", {V("X"), V("U"), V("W")})}));

    // Doubling, halving and parity.
    push(rs, horn({atom("Add", {V("X"), V("X"), V("Y")})}, {atom("Double", {V("X"), V("Y")})}));
    push(rs, horn({atom("Double", {V("Q"), V("N")})},
                  {atom("Even", {V("N")}), atom("Half", {V("N"), V("Q")})}));
    push(rs, horn({atom("Double", {V("Q"), V("M")}), atom("Succ", {V("M"), V("N")})},
                  {atom("Odd", {V("N")}), atom("Half", {V("N"), V("Q")})}));

    // Binary digits: bit 0 is the parity, higher bits recurse on the half.
    push(rs, horn({atom("Even", {V("X")}), atom("Min", {V("Z")})},
                  {atom("Bit0", {V("X"), V("Z")})}));
    push(rs, horn({atom("Odd", {V("X")}), atom("Min", {V("Z")})},
                  {atom("Bit1", {V("X"), V("Z")})}));
    push(rs, horn({atom("Half", {V("X"), V("Q")}), atom("Bit0", {V("Q"), V("K")}),
                   atom("Succ", {V("K"), V("K2")})},
                  {atom("Bit0", {V("X"), V("K2")})}));
    push(rs, horn({atom("Half", {V("X"), V("Q")}), atom("Bit1", {V("Q"), V("K")}),
                   atom("Succ", {V("K"), V("K2")})},
                  {atom("Bit1", {V("X"), V("K2")})}));

    // Binary length: len(0) = len(1) = 1, len(x) = len(x/2) + 1 for x >= 2.
    push(rs, horn({atom("Min", {V("Z")}), atom("Succ", {V("Z"), V("O")})},
                  {atom("Len", {V("Z"), V("O")})}));
    push(rs, horn({atom("Min", {V("Z")}), atom("Succ", {V("Z"), V("O")})},
                  {atom("Len", {V("O"), V("O")})}));
    push(rs, horn({atom("Half", {V("X"), V("Q")}), atom("Min", {V("Z")}),
                   atom("LT", {V("Z"), V("Q")}), atom("Len", {V("Q"), V("L")}),
                   atom("Succ", {V("L"), V("L2")})},
                  {atom("Len", {V("X"), V("L2")})}));

    // Reflexive-transitive order on the spine.
    push(rs, horn({atom("Num", {V("X")})}, {atom("LE", {V("X"), V("X")})}));
    push(rs, horn({atom("LE", {V("X"), V("Y")}), atom("Succ", {V("Y"), V("Z")})},
                  {atom("LE", {V("X"), V("Z")})}));
    return rs;
}

// ---------------------------------------------------------------------------

namespace {

// Fixed layout quantities for a single-constant database.
struct Layout {
    const Schema& dsch;
    const Schema& qsch;
    uint64_t wd, nd, wq, nq;
    uint64_t head_len;   // cells before the database table
    uint64_t dtable_len; // one cell per database relation when c = 1
    uint64_t estart;     // first cell of b(e)

    explicit Layout(const Schema& d, const Schema& q) : dsch(d), qsch(q) {
        wd = d.max_arity();
        nd = d.size();
        wq = q.max_arity();
        nq = q.size();
        head_len = binary(wd).size() + 1 + binary(nd).size() + 1 + binary(1).size() + 1;
        dtable_len = nd; // one candidate tuple per relation when c = 1
        estart = head_len + dtable_len + 1 + binary(wq).size() + 1 + binary(nq).size() + 1;
    }

    // The fixed characters before b(e): header blocks, separators, and the
    // b(wq)/b(nq) blocks; the database-table cells are omitted (they are
    // written by the PosD rules).
    std::vector<std::pair<uint64_t, char>> fixed_cells() const {
        std::vector<std::pair<uint64_t, char>> out;
        std::string prefix = binary(wd) + "#" + binary(nd) + "#" + binary(1) + "#";
        for (size_t i = 0; i < prefix.size(); ++i) out.emplace_back(i, prefix[i]);
        uint64_t pos = head_len + dtable_len;
        std::string mid = "#" + binary(wq) + "#" + binary(nq) + "#";
        for (size_t i = 0; i < mid.size(); ++i) out.emplace_back(pos + i, mid[i]);
        return out;
    }
};

TapeSym sym_of_char(char c) {
    auto s = tape_from_char(c);
    if (!s) throw std::logic_error("bad layout character");
    return *s;
}

// Mixed-radix rank of a candidate-atom argument tuple plus the per-relation
// offset, computed in the rule body over spine numbers. `values` holds one
// spine-number term per argument position, leftmost most significant.
Term tuple_index(BodyArith& b, const std::vector<Term>& values, const Term& base,
                 const Term& offset) {
    Term idx = b.zero();
    for (const auto& v : values) {
        Term scaled = b.mul(idx, base);
        idx = b.add(scaled, v);
    }
    return b.add(offset, idx);
}

// Appends the HasQ/NHasQ defining rules for relation index qi. Argument
// positions split into constant/variable patterns; constants are the ranked
// database constant, variables are spine numbers in [1, e].
void emit_hasq(RuleSet& rs, const Layout& lay, size_t qi, bool positive) {
    const std::string rel = lay.qsch.symbols()[qi];
    unsigned ar = lay.qsch.arity(rel);
    const std::string target = (positive ? "HasQ" : "NHasQ") + std::to_string(qi);

    for (unsigned pattern = 0; pattern < (1u << ar); ++pattern) {
        BodyArith b;
        Term x = V("X");
        b.body.push_back(atom("BCQ", {x}));
        auto [e, v] = b.pair_dec(x);
        Term base = b.succ(e); // radix = e + 1 when c = 1

        Term cvar = V("C");
        bool used_const = false;

        std::vector<Term> head_args;   // mixed constant/number arguments
        std::vector<Term> index_vals;  // spine-number values per position
        for (unsigned pos = 0; pos < ar; ++pos) {
            bool is_var = (pattern >> pos) & 1;
            if (is_var) {
                Term w = V("W" + std::to_string(pos));
                b.body.push_back(atom("Num", {w}));
                b.require_lt(b.zero(), w);
                b.require_le(w, e);
                head_args.push_back(w);
                index_vals.push_back(w);
            } else {
                used_const = true;
                head_args.push_back(cvar);
                index_vals.push_back(b.zero());
            }
        }
        if (used_const) b.body.push_back(atom("CPos", {cvar, b.zero()}));

        // Offset of this relation's block: sum of earlier universe sizes.
        Term offset = b.zero();
        for (size_t j = 0; j < qi; ++j) {
            Term cells = b.number(1);
            for (unsigned k = 0; k < lay.qsch.arity(lay.qsch.symbols()[j]); ++k)
                cells = b.mul(cells, base);
            offset = b.add(offset, cells);
        }
        Term idx = tuple_index(b, index_vals, base, offset);

        // Bit position within v: table size u, bit = u - 1 - idx.
        Term u = b.zero();
        for (const auto& qrel : lay.qsch.symbols()) {
            Term cells = b.number(1);
            for (unsigned k = 0; k < lay.qsch.arity(qrel); ++k) cells = b.mul(cells, base);
            u = b.add(u, cells);
        }
        Term um1 = b.var();
        b.body.push_back(atom("Succ", {um1, u}));
        Term bitpos = b.sub_from(um1, idx);
        b.body.push_back(atom(positive ? "Bit1" : "Bit0", {v, bitpos}));

        std::vector<Term> args = head_args;
        args.push_back(x);
        push(rs, horn(std::move(b.body), {atom(target, std::move(args))}));
    }
}

// The q-table cell of a candidate atom: PosQ<qi>(args.., Z, X).
void emit_posq(RuleSet& rs, const Layout& lay, size_t qi) {
    const std::string rel = lay.qsch.symbols()[qi];
    unsigned ar = lay.qsch.arity(rel);
    for (unsigned pattern = 0; pattern < (1u << ar); ++pattern) {
        BodyArith b;
        Term x = V("X");
        b.body.push_back(atom("BCQ", {x}));
        auto [e, v] = b.pair_dec(x);
        Term base = b.succ(e);

        Term cvar = V("C");
        bool used_const = false;
        std::vector<Term> head_args;
        std::vector<Term> index_vals;
        for (unsigned pos = 0; pos < ar; ++pos) {
            bool is_var = (pattern >> pos) & 1;
            if (is_var) {
                Term w = V("W" + std::to_string(pos));
                b.body.push_back(atom("Num", {w}));
                b.require_lt(b.zero(), w);
                b.require_le(w, e);
                head_args.push_back(w);
                index_vals.push_back(w);
            } else {
                used_const = true;
                head_args.push_back(cvar);
                index_vals.push_back(b.zero());
            }
        }
        if (used_const) b.body.push_back(atom("CPos", {cvar, b.zero()}));

        Term offset = b.zero();
        for (size_t j = 0; j < qi; ++j) {
            Term cells = b.number(1);
            for (unsigned k = 0; k < lay.qsch.arity(lay.qsch.symbols()[j]); ++k)
                cells = b.mul(cells, base);
            offset = b.add(offset, cells);
        }
        Term idx = tuple_index(b, index_vals, base, offset);

        // Cell: estart + len(b(e)) + 1 ('#') + 1 (sentinel) + idx.
        Term es = b.number(lay.estart);
        Term l = b.len(e);
        Term hash_cell = b.add(es, l);
        Term sentinel = b.succ(hash_cell);
        Term first_bit = b.succ(sentinel);
        Term cell = b.add(first_bit, idx);

        std::vector<Term> args = head_args;
        args.push_back(cell);
        args.push_back(x);
        push(rs, horn(std::move(b.body), {atom("PosQ" + std::to_string(qi), std::move(args))}));
    }
}

} // namespace

RuleSet gen_sigma_sim(const Ntm& m, const Schema& dsch, const Schema& qsch) {
    m.validate();
    if (!m.convergent())
        throw std::invalid_argument("gen_sigma_sim expects a convergent machine");
    if (m.bound() > 2)
        throw std::invalid_argument("gen_sigma_sim expects an at-most-2-bounded machine");
    for (const auto& rel : dsch.symbols())
        if (dsch.arity(rel) == 0)
            throw std::invalid_argument(
                "gen_sigma_sim: nullary database relations have no constants to anchor "
                "the tape layout: " + rel);

    RuleSet rs;
    Layout lay(dsch, qsch);

    // Constant ranks. Exact for a single database constant; a second
    // constant either collides (the branch fails) or goes Undesired.
    push(rs, rule({atom("DC", {V("X")}), atom("Min", {V("N")})},
                  {Disjunct{{atom("CPos", {V("X"), V("N")})}},
                   Disjunct{{atom("Undesired")}}}));
    push(rs, rule({atom("CPos", {V("X"), V("N")}), atom("CPos", {V("Y"), V("N")})},
                  {Disjunct{{Atom::equality(V("X"), V("Y"))}}}));
    push(rs, rule({atom("CPos", {V("X"), V("N")}), atom("CPos", {V("X"), V("M")})},
                  {Disjunct{{Atom::equality(V("N"), V("M"))}}}));

    // Pairing arithmetic: triangular numbers, Cantor decomposition, powers
    // of two.
    push(rs, horn({atom("Succ", {V("W"), V("W1")}), atom("Mul", {V("W"), V("W1"), V("D")}),
                   atom("Add", {V("T"), V("T"), V("D")})},
                  {atom("Tri", {V("W"), V("T")})}));
    push(rs, horn({atom("Tri", {V("W"), V("T")}), atom("Add", {V("T"), V("V"), V("X")}),
                   atom("Add", {V("E"), V("V"), V("W")})},
                  {atom("PairDec", {V("X"), V("E"), V("V")})}));
    push(rs, horn({atom("Min", {V("Z")}), atom("Succ", {V("Z"), V("O")})},
                  {atom("Pow2", {V("Z"), V("O")})}));
    push(rs, horn({atom("Pow2", {V("K"), V("P")}), atom("Succ", {V("K"), V("K1")}),
                   atom("Add", {V("P"), V("P"), V("P1")})},
                  {atom("Pow2", {V("K1"), V("P1")})}));

    // Valid query numbers: x = pair(e, v) where v has a sentinel bit above a
    // table of size u(e) and at least one membership bit set.
    {
        BodyArith b;
        Term x = V("X");
        Term ranked = V("C");
        b.body.push_back(atom("CPos", {ranked, b.zero()})); // layout needs c = 1
        auto [e, v] = b.pair_dec(x);
        Term base = b.succ(e);
        Term u = b.zero();
        for (const auto& qrel : qsch.symbols()) {
            Term cells = b.number(1);
            for (unsigned k = 0; k < qsch.arity(qrel); ++k) cells = b.mul(cells, base);
            u = b.add(u, cells);
        }
        Term low = b.pow2(u);
        Term u1 = b.succ(u);
        Term high = b.pow2(u1);
        b.require_lt(low, v);
        b.require_lt(v, high);
        push(rs, horn(std::move(b.body), {atom("BCQ", {x})}));
    }

    // Existential variables of the query encoded by x are the numbers 1..e.
    {
        BodyArith b;
        Term x = V("X");
        b.body.push_back(atom("BCQ", {x}));
        auto [e, v] = b.pair_dec(x);
        (void)v;
        Term w = V("W");
        b.body.push_back(atom("Num", {w}));
        b.require_lt(b.zero(), w);
        b.require_le(w, e);
        push(rs, horn(std::move(b.body), {atom("QVar", {w, x})}));
    }

    for (size_t qi = 0; qi < qsch.size(); ++qi) {
        emit_hasq(rs, lay, qi, true);
        emit_hasq(rs, lay, qi, false);
        emit_posq(rs, lay, qi);
    }

    // Database-table cells: with one constant each relation contributes a
    // single candidate tuple, at a fixed offset.
    for (size_t di = 0; di < dsch.size(); ++di) {
        const std::string rel = dsch.symbols()[di];
        unsigned ar = dsch.arity(rel);
        BodyArith b;
        Term c = V("C");
        b.body.push_back(atom("CPos", {c, b.zero()}));
        Term cell = b.number(lay.head_len + di);
        std::vector<Term> args(ar, c);
        args.push_back(cell);
        push(rs, horn(std::move(b.body), {atom("PosD" + std::to_string(di), std::move(args))}));
    }

    // Copying the database: a with/without pair of rules per database
    // relation; the without-rule writes barred zeros everywhere, which the
    // convergence of the machine tolerates.
    for (size_t di = 0; di < dsch.size(); ++di) {
        const std::string rel = dsch.symbols()[di];
        unsigned ar = dsch.arity(rel);
        std::vector<Term> ys;
        for (unsigned i = 1; i <= ar; ++i) ys.push_back(V("Y" + std::to_string(i)));
        Term z = V("Z"), x = V("X");
        std::vector<Term> pos_args = ys;
        pos_args.push_back(z);
        {
            std::vector<Atom> body{atom(rel, ys), atom("PosD" + std::to_string(di), pos_args),
                                   atom("BCQ", {x})};
            push(rs, horn(std::move(body), {atom(itape(TapeSym::BarOne), {z, x})}));
        }
        {
            std::vector<Atom> body{atom("PosD" + std::to_string(di), pos_args),
                                   atom("BCQ", {x})};
            push(rs, horn(std::move(body), {atom(itape(TapeSym::BarZero), {z, x})}));
        }
    }

    // Copying the query table.
    for (size_t qi = 0; qi < qsch.size(); ++qi) {
        unsigned ar = qsch.arity(qsch.symbols()[qi]);
        std::vector<Term> ys;
        for (unsigned i = 1; i <= ar; ++i) ys.push_back(V("Y" + std::to_string(i)));
        Term z = V("Z"), x = V("X");
        std::vector<Term> has_args = ys;
        has_args.push_back(x);
        std::vector<Term> pos_args = ys;
        pos_args.push_back(z);
        pos_args.push_back(x);
        push(rs, horn({atom("HasQ" + std::to_string(qi), has_args),
                       atom("PosQ" + std::to_string(qi), pos_args), atom("BCQ", {x})},
                      {atom(itape(TapeSym::One), {z, x})}));
        push(rs, horn({atom("NHasQ" + std::to_string(qi), has_args),
                       atom("PosQ" + std::to_string(qi), pos_args), atom("BCQ", {x})},
                      {atom(itape(TapeSym::Zero), {z, x})}));
    }

    // Fixed header characters.
    for (const auto& [pos, ch] : lay.fixed_cells()) {
        BodyArith b;
        Term x = V("X");
        b.body.push_back(atom("BCQ", {x}));
        Term cell = b.number(pos);
        push(rs, horn(std::move(b.body), {atom(itape(sym_of_char(ch)), {cell, x})}));
    }

    // b(e): bit j (most significant first) sits at estart + j; bits are read
    // from Bit0/Bit1 at position len - 1 - j.
    for (bool one : {false, true}) {
        BodyArith b;
        Term x = V("X");
        b.body.push_back(atom("BCQ", {x}));
        auto [e, v] = b.pair_dec(x);
        (void)v;
        Term l = b.len(e);
        Term j = V("J");
        b.body.push_back(atom("Num", {j}));
        b.require_lt(j, l);
        Term lm1 = b.var();
        b.body.push_back(atom("Succ", {lm1, l}));
        Term k = b.sub_from(lm1, j); // k = (len-1) - j
        b.body.push_back(atom(one ? "Bit1" : "Bit0", {e, k}));
        Term es = b.number(lay.estart);
        Term cell = b.add(es, j);
        push(rs, horn(std::move(b.body),
                      {atom(itape(one ? TapeSym::One : TapeSym::Zero), {cell, x})}));
    }
    {
        // '#' after b(e) and the sentinel cell of the query table.
        BodyArith b;
        Term x = V("X");
        b.body.push_back(atom("BCQ", {x}));
        auto [e, v] = b.pair_dec(x);
        (void)v;
        Term l = b.len(e);
        Term es = b.number(lay.estart);
        Term hash_cell = b.add(es, l);
        Term sentinel = b.succ(hash_cell);
        push(rs, horn(std::vector<Atom>(b.body), {atom(itape(TapeSym::Hash), {hash_cell, x}),
                                                  atom(itape(TapeSym::One), {sentinel, x})}));
    }
    {
        // Blank tail: every cell from the end of the encoding on.
        BodyArith b;
        Term x = V("X");
        b.body.push_back(atom("BCQ", {x}));
        auto [e, v] = b.pair_dec(x);
        (void)v;
        Term base = b.succ(e);
        Term u = b.zero();
        for (const auto& qrel : qsch.symbols()) {
            Term cells = b.number(1);
            for (unsigned k = 0; k < qsch.arity(qrel); ++k) cells = b.mul(cells, base);
            u = b.add(u, cells);
        }
        Term l = b.len(e);
        Term es = b.number(lay.estart);
        Term hash_cell = b.add(es, l);
        Term sentinel = b.succ(hash_cell);
        Term first_bit = b.succ(sentinel);
        Term end = b.add(first_bit, u);
        Term p = V("P");
        b.body.push_back(atom("Num", {p}));
        b.require_le(end, p);
        push(rs, horn(std::move(b.body), {atom(itape(TapeSym::Blank), {p, x})}));
    }

    // Work tape, head and state initialization.
    push(rs, horn({atom("BCQ", {V("X")}), atom("Num", {V("V")}), atom("Num", {V("P")}),
                   atom("Min", {V("T")})},
                  {atom(wtape(TapeSym::Blank), {V("T"), V("V"), V("X"), V("P")})}));
    push(rs, horn({atom("BCQ", {V("X")}), atom("Num", {V("V")}), atom("Min", {V("P")}),
                   atom("Min", {V("T")})},
                  {atom("WHead", {V("T"), V("V"), V("X"), V("P")})}));
    push(rs, horn({atom("BCQ", {V("X")}), atom("Num", {V("V")}), atom("Min", {V("T")})},
                  {atom(state_symbol(m.initial), {V("T"), V("V"), V("X")})}));

    // Transitions. For fixed choice number v the run is deterministic; cells
    // with two options read bit t of v to pick one.
    for (const auto& [key, options] : m.delta) {
        const auto& [from, input_sym, work_sym] = key;
        for (size_t i = 0; i < options.size(); ++i) {
            const NtmTransition& tr = options[i];
            Term t = V("T"), t2 = V("T2"), p = V("P"), v = V("V"), x = V("X");
            std::vector<Atom> body{
                atom(state_symbol(from), {t, v, x}),
                atom(itape(input_sym), {t, x}),
                atom("WHead", {t, v, x, p}),
                atom(wtape(work_sym), {t, v, x, p}),
                atom("Succ", {t, t2}),
            };
            if (options.size() == 2)
                body.push_back(atom(i == 0 ? "Bit0" : "Bit1", {v, t}));
            Term p2 = V("P2");
            if (tr.move == Move::Right) body.push_back(atom("Succ", {p, p2}));
            else body.push_back(atom("Succ", {p2, p}));
            std::vector<Atom> head{
                atom(state_symbol(tr.next_state), {t2, v, x}),
                atom(wtape(tr.write), {t2, v, x, p}),
                atom("WHead", {t2, v, x, p2}),
            };
            push(rs, horn(std::move(body), std::move(head)));
        }
    }

    // Frame rules: cells away from the head persist, gated on the run
    // actually continuing.
    for (TapeSym s : {TapeSym::Zero, TapeSym::One, TapeSym::Blank, TapeSym::Hash,
                      TapeSym::BarZero, TapeSym::BarOne}) {
        for (bool left : {true, false}) {
            Term p = V("P"), r = V("R"), r2 = V("R2"), t = V("T"), t2 = V("T2"), v = V("V"),
                 x = V("X");
            std::vector<Atom> body{
                atom(wtape(s), {t, v, x, p}),
                atom("WHead", {t, v, x, r}),
                left ? atom("LT", {p, r}) : atom("LT", {r, p}),
                atom("Succ", {t, t2}),
                atom("WHead", {t2, v, x, r2}),
            };
            push(rs, horn(std::move(body), {atom(wtape(s), {t2, v, x, p})}));
        }
    }

    // Acceptance.
    for (const auto& s : m.accepting)
        push(rs, horn({atom("BCQ", {V("Z")}), atom(state_symbol(s), {V("X"), V("Y"), V("Z")})},
                      {atom("Accept", {V("Z")})}));
    return rs;
}

RuleSet gen_sigma_um(const Schema& qsch) {
    RuleSet rs;
    push(rs, horn({atom("BCQ", {V("X")}), atom("QVar", {V("Y"), V("X")}),
                   atom("NewV", {V("Y"), V("Z"), V("X")})},
                  {atom("Name", {V("Y"), V("Z"), V("X")})}));
    push(rs, horn({atom("BCQ", {V("X")}), atom("DC", {V("Y")})},
                  {atom("Name", {V("Y"), V("Y"), V("X")})}));

    // NewV(y, z, x): z = pair(x + 1, y) + c with c = 1.
    {
        BodyArith b;
        Term y = V("Y"), x = V("X");
        b.body.push_back(atom("QVar", {y, x}));
        Term x1 = b.succ(x);
        Term w = b.add(x1, y);
        Term t = b.tri(w);
        Term p = b.add(t, y);
        Term z = b.succ(p);
        push(rs, horn(std::move(b.body), {atom("NewV", {y, z, x})}));
    }

    for (size_t qi = 0; qi < qsch.size(); ++qi) {
        const std::string rel = qsch.symbols()[qi];
        unsigned ar = qsch.arity(rel);
        {
            Term x = V("X");
            std::vector<Atom> body;
            std::vector<Term> has_args;
            std::vector<Term> new_args;
            body.push_back(atom("Accept", {x}));
            for (unsigned i = 1; i <= ar; ++i) {
                Term y = V("Y" + std::to_string(i));
                Term z = V("Z" + std::to_string(i));
                has_args.push_back(y);
                new_args.push_back(z);
            }
            has_args.push_back(x);
            body.push_back(atom("HasQ" + std::to_string(qi), has_args));
            for (unsigned i = 0; i < ar; ++i)
                body.push_back(atom("Name", {has_args[i], new_args[i], x}));
            push(rs, horn(std::move(body), {atom(rel, new_args)}));
        }
        {
            std::vector<Atom> body{atom("Undesired")};
            std::vector<Term> args;
            for (unsigned i = 1; i <= ar; ++i) {
                Term x = V("X" + std::to_string(i));
                body.push_back(atom("DC", {x}));
                args.push_back(x);
            }
            push(rs, horn(std::move(body), {atom(rel, args)}));
        }
    }
    return rs;
}

namespace {

bool reserved_symbol(const std::string& name) {
    static const std::set<std::string> fixed = {
        "DC",  "LT",   "Undesired", "NotMin", "Min",     "LTNotSucc", "Succ", "Num",
        "Add", "Mul",  "Double",    "Even",   "Odd",     "Half",      "Bit0", "Bit1",
        "Len", "LE",   "Pow2",      "Tri",    "PairDec", "CPos",      "BCQ",  "QVar",
        "NewV", "Name", "Accept",   "WHead"};
    if (fixed.count(name)) return true;
    for (const char* prefix : {"PosD", "PosQ", "HasQ", "NHasQ", "State_", "ITape", "WTape"})
        if (name.rfind(prefix, 0) == 0) return true;
    return false;
}

} // namespace

RuleSet compile(const Ntm& m, const Schema& dsch, const Schema& qsch) {
    for (const auto& rel : dsch.symbols())
        if (reserved_symbol(rel))
            throw std::invalid_argument("database symbol collides with the auxiliary "
                                        "vocabulary: " + rel);
    for (const auto& rel : qsch.symbols())
        if (reserved_symbol(rel) || dsch.has(rel))
            throw std::invalid_argument("query symbol collides with the auxiliary "
                                        "vocabulary or the database schema: " + rel);

    RuleSet out = gen_sigma_num(dsch);
    append(out, gen_sigma_sim(m, dsch, qsch));
    append(out, gen_sigma_um(qsch));
    for (const auto& rel : qsch.symbols()) out.schema.add(rel, qsch.arity(rel));
    for (const auto& rel : dsch.symbols()) out.schema.add(rel, dsch.arity(rel));
    return out;
}

} // namespace dedchase
