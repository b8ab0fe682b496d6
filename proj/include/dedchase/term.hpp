#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace dedchase {

// Terms come in three disjoint universes. Constants carry a printable name,
// variables carry a name (leading uppercase by convention), labeled nulls
// carry an index and are only ever created internally (chase, freezing).
enum class TermKind : uint8_t { Constant, Variable, Null };

class Term {
public:
    Term() : kind_(TermKind::Constant) {}

    static Term constant(std::string name);
    static Term variable(std::string name);
    static Term null(uint32_t index);

    TermKind kind() const { return kind_; }
    bool is_constant() const { return kind_ == TermKind::Constant; }
    bool is_variable() const { return kind_ == TermKind::Variable; }
    bool is_null() const { return kind_ == TermKind::Null; }

    // Name of a constant or variable; empty for nulls.
    const std::string& name() const { return name_; }
    uint32_t index() const { return index_; }

    // Total order: kind-major, then name/index.
    friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        if (a.kind_ == TermKind::Null) return a.index_ <=> b.index_;
        return a.name_ <=> b.name_;
    }
    friend bool operator==(const Term& a, const Term& b) {
        return a.kind_ == b.kind_ && a.index_ == b.index_ && a.name_ == b.name_;
    }

    // Printable form: constants may be quoted if they contain characters
    // outside the bare identifier syntax; nulls render as ~k.
    std::string str() const;

private:
    TermKind kind_;
    std::string name_;
    uint32_t index_ = 0;
};

// True if the name can appear unquoted as a constant in rule/data files.
bool is_bare_constant_name(const std::string& name);
bool is_variable_name(const std::string& name);

} // namespace dedchase
