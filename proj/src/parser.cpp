#include "dedchase/parser.hpp"

#include <cctype>
#include <optional>

namespace dedchase {

namespace {

enum class Tok { Ident, Quoted, LParen, RParen, Comma, Arrow, Pipe, Dot, Equals, Question, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_;

    int getc_() {
        if (pos_ >= text_.size()) return -1;
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return static_cast<unsigned char>(c);
    }

    int look() const { return pos_ < text_.size() ? static_cast<unsigned char>(text_[pos_]) : -1; }

    void advance() {
        // Skip whitespace and % comments.
        for (;;) {
            int c = look();
            if (c == '%') {
                while (look() != -1 && look() != '\n') getc_();
                continue;
            }
            if (c != -1 && std::isspace(c)) {
                getc_();
                continue;
            }
            break;
        }
        int line = line_, col = col_;
        int c = look();
        if (c == -1) {
            current_ = {Tok::End, "", line, col};
            return;
        }
        if (std::isalnum(c) || c == '_') {
            std::string s;
            while (look() != -1 && (std::isalnum(look()) || look() == '_'))
                s.push_back(static_cast<char>(getc_()));
            current_ = {Tok::Ident, s, line, col};
            return;
        }
        if (c == '\'') {
            getc_();
            std::string s;
            for (;;) {
                int d = look();
                if (d == -1 || d == '\n') throw ParseError(line, col, "unterminated quoted constant");
                getc_();
                if (d == '\'') break;
                // Reserved for generated names: pair constants, renamed
                // copies, labeled nulls.
                if (d == '*' || d == '@' || d == '~')
                    throw ParseError(line, col,
                                     std::string("character '") + static_cast<char>(d) +
                                         "' is reserved in constants");
                s.push_back(static_cast<char>(d));
            }
            current_ = {Tok::Quoted, s, line, col};
            return;
        }
        getc_();
        switch (c) {
        case '(': current_ = {Tok::LParen, "(", line, col}; return;
        case ')': current_ = {Tok::RParen, ")", line, col}; return;
        case ',': current_ = {Tok::Comma, ",", line, col}; return;
        case '|': current_ = {Tok::Pipe, "|", line, col}; return;
        case '.': current_ = {Tok::Dot, ".", line, col}; return;
        case '=': current_ = {Tok::Equals, "=", line, col}; return;
        case '?': current_ = {Tok::Question, "?", line, col}; return;
        case '-':
            if (look() == '>') {
                getc_();
                current_ = {Tok::Arrow, "->", line, col};
                return;
            }
            throw ParseError(line, col, "unexpected '-'");
        default:
            throw ParseError(line, col, std::string("unexpected character '") +
                                             static_cast<char>(c) + "'");
        }
    }
};

struct Parser {
    Lexer lex;
    bool allow_variables; // data files are ground

    explicit Parser(const std::string& text, bool vars) : lex(text), allow_variables(vars) {}

    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.column, msg + " (got '" + t.text + "')");
    }

    Token expect(Tok kind, const std::string& what) {
        Token t = lex.take();
        if (t.kind != kind) fail(t, "expected " + what);
        return t;
    }

    Term term_from(const Token& t) {
        if (t.kind == Tok::Quoted) return Term::constant(t.text);
        if (t.kind != Tok::Ident) fail(t, "expected a term");
        if (std::isupper(static_cast<unsigned char>(t.text[0]))) {
            if (!allow_variables)
                throw SemanticError("line " + std::to_string(t.line) +
                                    ": variables are not allowed here: " + t.text);
            return Term::variable(t.text);
        }
        return Term::constant(t.text);
    }

    // literal := SYMBOL [ "(" term {"," term} ")" ]  |  term "=" term
    // The caller checks whether equalities are admissible in this position.
    Atom parse_literal() {
        Token head = lex.take();
        if (head.kind != Tok::Ident && head.kind != Tok::Quoted)
            fail(head, "expected an atom");
        if (head.kind == Tok::Ident && lex.peek().kind == Tok::LParen) {
            lex.take();
            Atom a{head.text, {}};
            for (;;) {
                a.args.push_back(term_from(lex.take()));
                Token sep = lex.take();
                if (sep.kind == Tok::RParen) break;
                if (sep.kind != Tok::Comma) fail(sep, "expected ',' or ')'");
            }
            return a;
        }
        if (lex.peek().kind == Tok::Equals) {
            lex.take();
            Term lhs = term_from(head);
            Term rhs = term_from(lex.take());
            return Atom::equality(lhs, rhs);
        }
        if (head.kind == Tok::Quoted) fail(head, "expected a relation symbol");
        // Bare symbol: nullary atom (leading-lowercase would be a constant,
        // but a constant cannot stand alone, so accept both cases here).
        return Atom{head.text, {}};
    }
};

} // namespace

RuleSet parse_rules(const std::string& text) {
    Parser p(text, /*vars=*/true);
    RuleSet out;
    while (p.lex.peek().kind != Tok::End) {
        Token start = p.lex.peek();
        if (start.kind == Tok::Arrow)
            p.fail(start, "rule body must be nonempty");
        Ded rule;
        for (;;) {
            Token at = p.lex.peek();
            Atom a = p.parse_literal();
            if (a.is_equality())
                throw SemanticError("line " + std::to_string(at.line) +
                                    ": equalities are not allowed in rule bodies");
            rule.body.push_back(std::move(a));
            Token sep = p.lex.take();
            if (sep.kind == Tok::Arrow) break;
            if (sep.kind != Tok::Comma) p.fail(sep, "expected ',' or '->'");
        }
        for (;;) {
            Disjunct d;
            for (;;) {
                d.literals.push_back(p.parse_literal());
                if (p.lex.peek().kind != Tok::Comma) break;
                p.lex.take();
            }
            rule.disjuncts.push_back(std::move(d));
            Token sep = p.lex.take();
            if (sep.kind == Tok::Dot) break;
            if (sep.kind != Tok::Pipe) p.fail(sep, "expected '|' or '.'");
        }
        try {
            validate(rule);
            collect_schema(rule, out.schema);
        } catch (const std::invalid_argument& e) {
            throw SemanticError("line " + std::to_string(start.line) + ": " + e.what());
        }
        out.rules.push_back(std::move(rule));
    }
    return out;
}

Database parse_database(const std::string& text) {
    Parser p(text, /*vars=*/false);
    Schema schema;
    std::vector<Fact> facts;
    while (p.lex.peek().kind != Tok::End) {
        Token start = p.lex.peek();
        Atom a = p.parse_literal();
        if (a.is_equality())
            throw SemanticError("line " + std::to_string(start.line) +
                                ": a database holds relation facts only");
        p.expect(Tok::Dot, "'.'");
        try {
            schema.add(a.relation, a.args.size());
        } catch (const std::invalid_argument& e) {
            throw SemanticError("line " + std::to_string(start.line) + ": " + e.what());
        }
        facts.push_back(Fact{std::move(a.relation), std::move(a.args)});
    }
    Database out(schema);
    for (auto& f : facts) out.add(std::move(f));
    return out;
}

namespace {

Cq parse_query_impl(const std::string& text) {
    Parser p(text, /*vars=*/true);
    p.expect(Tok::Question, "'?'");
    Cq out;
    if (p.lex.peek().kind == Tok::LParen) {
        p.lex.take();
        if (p.lex.peek().kind != Tok::RParen) {
            for (;;) {
                Token t = p.lex.take();
                Term v = p.term_from(t);
                if (!v.is_variable())
                    throw SemanticError("line " + std::to_string(t.line) +
                                        ": free positions must be variables");
                out.free_variables.push_back(v);
                Token sep = p.lex.take();
                if (sep.kind == Tok::RParen) break;
                if (sep.kind != Tok::Comma) p.fail(sep, "expected ',' or ')'");
            }
        } else {
            p.lex.take();
        }
    }
    for (;;) {
        Token at = p.lex.peek();
        Atom a = p.parse_literal();
        if (a.is_equality())
            throw SemanticError("line " + std::to_string(at.line) +
                                ": equalities are not allowed in queries");
        out.atoms.push_back(std::move(a));
        Token sep = p.lex.take();
        if (sep.kind == Tok::Dot) break;
        if (sep.kind != Tok::Comma) p.fail(sep, "expected ',' or '.'");
    }
    Token end = p.lex.take();
    if (end.kind != Tok::End) p.fail(end, "expected end of query file");
    if (out.atoms.empty())
        throw SemanticError("query must contain at least one atom");
    try {
        out.schema(); // arity consistency
    } catch (const std::invalid_argument& e) {
        throw SemanticError(e.what());
    }
    return out;
}

} // namespace

Bcq parse_bcq(const std::string& text) {
    Cq q = parse_query_impl(text);
    if (!q.free_variables.empty())
        throw SemanticError("expected a boolean query, found free variables");
    return Bcq{std::move(q.atoms)};
}

Cq parse_cq(const std::string& text) {
    return parse_query_impl(text);
}

std::string serialize_rules(const RuleSet& rules) {
    return rules.str();
}

} // namespace dedchase
