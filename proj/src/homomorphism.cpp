#include "dedchase/homomorphism.hpp"

#include <algorithm>
#include <map>

namespace dedchase {

namespace {

struct Matcher {
    const std::vector<Fact>& pattern;
    const Database& dst;
    const std::set<Term>& flexible;
    bool injective;
    const std::function<bool(const Binding&)>& visit;

    Binding binding;                 // flexible term -> image
    std::set<Term> used_images;      // for injectivity
    std::vector<bool> matched;
    bool stopped = false;

    Matcher(const std::vector<Fact>& pat, const Database& db,
            const std::set<Term>& flex, bool inj,
            const std::function<bool(const Binding&)>& vis)
        : pattern(pat), dst(db), flexible(flex), injective(inj), visit(vis),
          matched(pat.size(), false) {
        if (injective) {
            // Rigid pattern terms map to themselves and block those images.
            for (const auto& a : pat)
                for (const auto& t : a.args)
                    if (!flexible.count(t)) used_images.insert(t);
        }
    }

    bool is_flexible(const Term& t) const { return flexible.count(t) != 0; }

    // The value an atom position must take, if decided by the binding.
    std::optional<Term> value_at(const Term& p) const {
        if (!is_flexible(p)) return p;
        auto it = binding.find(p);
        if (it != binding.end()) return it->second;
        return std::nullopt;
    }

    // Whether `fact` is compatible with `atom` under the current binding.
    bool compatible(const Fact& atom, const Fact& fact) const {
        std::map<Term, Term> local;
        for (size_t i = 0; i < atom.args.size(); ++i) {
            const Term& p = atom.args[i];
            const Term& v = fact.args[i];
            auto bound = value_at(p);
            if (bound) {
                if (!(*bound == v)) return false;
                continue;
            }
            if (injective && used_images.count(v)) return false;
            auto [lit, fresh] = local.emplace(p, v);
            if (!fresh && !(lit->second == v)) return false;
        }
        if (injective) {
            std::set<Term> images;
            for (const auto& [p, v] : local)
                if (!images.insert(v).second) return false;
        }
        return true;
    }

    // Candidate facts share the longest decided prefix of the atom; the
    // per-relation vectors are sorted, so the range is contiguous.
    struct Range {
        std::vector<const Fact*>::const_iterator begin, end;
    };

    Range candidate_range(const Fact& atom, std::vector<Term>& prefix) const {
        const auto& facts = dst.facts_of(atom.relation);
        prefix.clear();
        for (const auto& p : atom.args) {
            auto v = value_at(p);
            if (!v) break;
            prefix.push_back(*v);
        }
        auto cmp_lower = [&](const Fact* f, const std::vector<Term>& pre) {
            for (size_t i = 0; i < pre.size(); ++i) {
                if (f->args[i] < pre[i]) return true;
                if (pre[i] < f->args[i]) return false;
            }
            return false; // equal prefix is not less
        };
        auto cmp_upper = [&](const std::vector<Term>& pre, const Fact* f) {
            for (size_t i = 0; i < pre.size(); ++i) {
                if (pre[i] < f->args[i]) return true;
                if (f->args[i] < pre[i]) return false;
            }
            return false;
        };
        auto lo = std::lower_bound(facts.begin(), facts.end(), prefix, cmp_lower);
        auto hi = std::upper_bound(lo, facts.end(), prefix, cmp_upper);
        return {lo, hi};
    }

    size_t count_candidates(size_t idx, size_t cap) const {
        std::vector<Term> prefix;
        Range r = candidate_range(pattern[idx], prefix);
        size_t n = 0;
        for (auto it = r.begin; it != r.end; ++it) {
            if (compatible(pattern[idx], **it) && ++n >= cap) break;
        }
        return n;
    }

    void run() { descend(pattern.size()); }

    void descend(size_t remaining) {
        if (stopped) return;
        if (remaining == 0) {
            if (!visit(binding)) stopped = true;
            return;
        }
        // Most constrained atom first; ties broken by atom order.
        size_t best = pattern.size();
        size_t best_count = SIZE_MAX;
        for (size_t i = 0; i < pattern.size(); ++i) {
            if (matched[i]) continue;
            size_t c = count_candidates(i, best_count == SIZE_MAX ? 16 : best_count);
            if (c < best_count) {
                best_count = c;
                best = i;
            }
            if (best_count == 0) return;
        }

        matched[best] = true;
        std::vector<Term> prefix;
        Range r = candidate_range(pattern[best], prefix);
        for (auto it = r.begin; it != r.end; ++it) {
            if (stopped) break;
            const Fact* f = *it;
            if (!compatible(pattern[best], *f)) continue;
            std::vector<Term> bound_here;
            for (size_t i = 0; i < pattern[best].args.size(); ++i) {
                const Term& p = pattern[best].args[i];
                if (!is_flexible(p) || binding.count(p)) continue;
                binding.emplace(p, f->args[i]);
                if (injective) used_images.insert(f->args[i]);
                bound_here.push_back(p);
            }
            descend(remaining - 1);
            for (const Term& p : bound_here) {
                if (injective) used_images.erase(binding.at(p));
                binding.erase(p);
            }
        }
        matched[best] = false;
    }
};

} // namespace

bool for_each_match(const std::vector<Fact>& pattern, const Database& dst,
                    const std::set<Term>& flexible, bool injective,
                    const std::function<bool(const Binding&)>& visit) {
    Matcher m(pattern, dst, flexible, injective, visit);
    m.run();
    return m.stopped;
}

bool for_each_homomorphism(const Database& src, const Database& dst,
                           const std::set<Term>& fixed, bool injective,
                           const std::function<bool(const Binding&)>& visit) {
    std::vector<Fact> pattern(src.facts().begin(), src.facts().end());
    std::set<Term> flexible;
    for (const auto& t : src.terms())
        if (!fixed.count(t)) flexible.insert(t);
    return for_each_match(pattern, dst, flexible, injective,
                          [&](const Binding& partial) {
                              Binding full = partial;
                              for (const auto& t : src.terms())
                                  if (!full.count(t)) full.emplace(t, t);
                              return visit(full);
                          });
}

std::optional<Binding> find_homomorphism(const Database& src, const Database& dst,
                                         const std::set<Term>& fixed, bool injective) {
    std::optional<Binding> out;
    for_each_homomorphism(src, dst, fixed, injective, [&](const Binding& h) {
        out = h;
        return false;
    });
    return out;
}

std::vector<Binding> all_homomorphisms(const Database& src, const Database& dst,
                                       const std::set<Term>& fixed, bool injective,
                                       size_t limit) {
    std::vector<Binding> out;
    for_each_homomorphism(src, dst, fixed, injective, [&](const Binding& h) {
        out.push_back(h);
        return limit == 0 || out.size() < limit;
    });
    return out;
}

namespace {

bool iso_with_fixed(const Database& a, const Database& b, const std::set<Term>& fixed) {
    if (a.terms().size() != b.terms().size()) return false;
    std::map<std::string, size_t> count_a, count_b;
    for (const auto& f : a.facts()) count_a[f.relation]++;
    for (const auto& f : b.facts()) count_b[f.relation]++;
    if (count_a != count_b) return false;
    // An injective homomorphism between equal-size structures with equal
    // fact counts maps the fact set onto the fact set; its inverse is then
    // a homomorphism as well.
    return find_homomorphism(a, b, fixed, /*injective=*/true).has_value();
}

} // namespace

bool is_isomorphic(const Database& a, const Database& b) {
    return iso_with_fixed(a, b, {});
}

bool is_isomorphic_fixing_constants(const Database& a, const Database& b) {
    std::set<Term> fixed = active_domain(a);
    for (const auto& t : active_domain(b)) fixed.insert(t);
    return iso_with_fixed(a, b, fixed);
}

} // namespace dedchase
