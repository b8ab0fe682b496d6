#pragma once

#include "dedchase/database.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace dedchase {

// A term mapping. Entries exist for every term of the pattern/source; rigid
// terms map to themselves.
using Binding = std::map<Term, Term>;

// Backtracking matcher for a conjunction of atoms against a database.
// Terms listed in `flexible` may be bound to any term of `dst`; all other
// terms are rigid and only match themselves. Enumeration is deterministic:
// the most constrained atom is matched first (ties broken by atom order),
// candidate facts are tried in the total fact order.
//
// `visit` returns false to stop enumeration early; the function returns true
// iff enumeration was stopped by the visitor.
bool for_each_match(const std::vector<Fact>& pattern, const Database& dst,
                    const std::set<Term>& flexible, bool injective,
                    const std::function<bool(const Binding&)>& visit);

// Homomorphisms src -> dst with h(c) = c for c in fixed. Constants outside
// `fixed` and all labeled nulls may be remapped.
bool for_each_homomorphism(const Database& src, const Database& dst,
                           const std::set<Term>& fixed, bool injective,
                           const std::function<bool(const Binding&)>& visit);

std::optional<Binding> find_homomorphism(const Database& src, const Database& dst,
                                         const std::set<Term>& fixed, bool injective);

std::vector<Binding> all_homomorphisms(const Database& src, const Database& dst,
                                       const std::set<Term>& fixed, bool injective,
                                       size_t limit = 0);

// Bijective homomorphism with homomorphic inverse; constants may be renamed.
bool is_isomorphic(const Database& a, const Database& b);

// Variant used by chase branch deduplication: constants must map to
// themselves, nulls may be permuted.
bool is_isomorphic_fixing_constants(const Database& a, const Database& b);

} // namespace dedchase
