#include "dedchase/term.hpp"

#include <cctype>
#include <stdexcept>

namespace dedchase {

Term Term::constant(std::string name) {
    Term t;
    t.kind_ = TermKind::Constant;
    t.name_ = std::move(name);
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind_ = TermKind::Variable;
    t.name_ = std::move(name);
    return t;
}

Term Term::null(uint32_t index) {
    Term t;
    t.kind_ = TermKind::Null;
    t.index_ = index;
    return t;
}

bool is_bare_constant_name(const std::string& name) {
    if (name.empty()) return false;
    unsigned char c0 = static_cast<unsigned char>(name[0]);
    if (!(std::islower(c0) || std::isdigit(c0))) return false;
    for (char ch : name) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (!(std::isalnum(c) || c == '_')) return false;
    }
    return true;
}

bool is_variable_name(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isupper(static_cast<unsigned char>(name[0]))) return false;
    for (char ch : name) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (!(std::isalnum(c) || c == '_')) return false;
    }
    return true;
}

std::string Term::str() const {
    switch (kind_) {
    case TermKind::Constant:
        if (is_bare_constant_name(name_)) return name_;
        return "'" + name_ + "'";
    case TermKind::Variable:
        return name_;
    case TermKind::Null:
        return "~" + std::to_string(index_);
    }
    throw std::logic_error("unreachable");
}

} // namespace dedchase
