#pragma once

#include "dedchase/database.hpp"
#include "dedchase/query.hpp"
#include "dedchase/rule.hpp"

#include <stdexcept>
#include <string>

namespace dedchase {

// Syntax errors: malformed tokens, unexpected input, unterminated rules.
struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ": " + what_),
          line(line_), column(column_) {}
};

// Well-formed syntax that violates a semantic constraint: equalities in rule
// bodies, arity clashes, empty-body rules.
struct SemanticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rule file: one DED per statement, `%` comments, whitespace-insensitive.
RuleSet parse_rules(const std::string& text);

// Database file: ground facts `R(a, b).`, `%` comments.
Database parse_database(const std::string& text);

// Query file: `? Q(X, a).` for a BCQ (all variables existential) or
// `?(X, Y) Q(X, Y), R(Y).` for a CQ with free variables.
Bcq parse_bcq(const std::string& text);
Cq parse_cq(const std::string& text);

std::string serialize_rules(const RuleSet& rules);

} // namespace dedchase
