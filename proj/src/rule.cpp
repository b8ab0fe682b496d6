#include "dedchase/rule.hpp"

#include <sstream>
#include <stdexcept>

namespace dedchase {

std::string Atom::str() const {
    if (is_equality()) return args[0].str() + " = " + args[1].str();
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

std::string Disjunct::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < literals.size(); ++i) {
        if (i) os << ", ";
        os << literals[i].str();
    }
    return os.str();
}

std::set<Term> Ded::body_variables() const {
    std::set<Term> out;
    for (const auto& a : body)
        for (const auto& t : a.args)
            if (t.is_variable()) out.insert(t);
    return out;
}

std::set<Term> Ded::existential_variables(size_t disjunct_index) const {
    std::set<Term> body_vars = body_variables();
    std::set<Term> out;
    for (const auto& lit : disjuncts.at(disjunct_index).literals)
        for (const auto& t : lit.args)
            if (t.is_variable() && !body_vars.count(t)) out.insert(t);
    return out;
}

std::string Ded::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < body.size(); ++i) {
        if (i) os << ", ";
        os << body[i].str();
    }
    os << " -> ";
    for (size_t i = 0; i < disjuncts.size(); ++i) {
        if (i) os << " | ";
        os << disjuncts[i].str();
    }
    os << ".";
    return os.str();
}

std::string RuleSet::str() const {
    std::ostringstream os;
    for (const auto& r : rules) os << r.str() << "\n";
    return os.str();
}

std::set<RuleLabel> classify(const Ded& rule) {
    std::set<RuleLabel> out;
    bool ed = rule.disjuncts.size() == 1;
    bool eq_free = true;
    bool full = true;
    for (size_t i = 0; i < rule.disjuncts.size(); ++i) {
        for (const auto& lit : rule.disjuncts[i].literals)
            if (lit.is_equality()) eq_free = false;
        if (!rule.existential_variables(i).empty()) full = false;
    }
    if (ed) out.insert(RuleLabel::ED);
    if (eq_free) {
        out.insert(RuleLabel::EqualityFree);
        out.insert(RuleLabel::DTGD);
    }
    if (ed && eq_free) out.insert(RuleLabel::TGD);
    if (full) out.insert(RuleLabel::Full);
    if (ed && rule.disjuncts[0].literals.size() == 1) {
        const Atom& a = rule.disjuncts[0].literals[0];
        if (!a.is_equality() && a.args.empty()) out.insert(RuleLabel::NCLike);
    }
    return out;
}

std::string label_name(RuleLabel label) {
    switch (label) {
    case RuleLabel::ED: return "ED";
    case RuleLabel::DTGD: return "DTGD";
    case RuleLabel::TGD: return "TGD";
    case RuleLabel::NCLike: return "NC-like";
    case RuleLabel::EqualityFree: return "equality-free";
    case RuleLabel::Full: return "full";
    }
    return "?";
}

std::set<std::string> intensional_symbols(const RuleSet& rules) {
    std::set<std::string> out;
    for (const auto& r : rules.rules)
        for (const auto& d : r.disjuncts)
            for (const auto& lit : d.literals)
                if (!lit.is_equality()) out.insert(lit.relation);
    return out;
}

void validate(const Ded& rule) {
    if (rule.body.empty())
        throw std::invalid_argument("rule body must be nonempty");
    if (rule.disjuncts.empty())
        throw std::invalid_argument("rule head must have at least one disjunct");
    for (const auto& a : rule.body) {
        if (a.is_equality())
            throw std::invalid_argument("equalities are not allowed in rule bodies");
        for (const auto& t : a.args)
            if (t.is_null())
                throw std::invalid_argument("labeled nulls cannot occur in rules");
    }
    for (const auto& d : rule.disjuncts) {
        if (d.literals.empty())
            throw std::invalid_argument("empty head disjunct");
        for (const auto& lit : d.literals) {
            if (lit.is_equality() && lit.args.size() != 2)
                throw std::invalid_argument("equality literal must have two terms");
            for (const auto& t : lit.args)
                if (t.is_null())
                    throw std::invalid_argument("labeled nulls cannot occur in rules");
        }
    }
}

void validate(const RuleSet& rules) {
    Schema check = rules.schema;
    for (const auto& r : rules.rules) {
        validate(r);
        collect_schema(r, check); // throws on arity clashes
        for (const auto& a : r.body)
            if (!rules.schema.has(a.relation))
                throw std::invalid_argument("rule uses symbol outside schema: " + a.relation);
        for (const auto& d : r.disjuncts)
            for (const auto& lit : d.literals)
                if (!lit.is_equality() && !rules.schema.has(lit.relation))
                    throw std::invalid_argument("rule uses symbol outside schema: " +
                                                lit.relation);
    }
}

void collect_schema(const Ded& rule, Schema& schema) {
    for (const auto& a : rule.body) schema.add(a.relation, a.args.size());
    for (const auto& d : rule.disjuncts)
        for (const auto& lit : d.literals)
            if (!lit.is_equality()) schema.add(lit.relation, lit.args.size());
}

} // namespace dedchase
