#include "rwb/sexpr.hpp"

namespace rwb {
namespace {

struct Lexer {
    const std::string& text;
    size_t pos = 0;
    int line = 1;
    int col = 1;

    void advance() {
        if (text[pos] == '\n') { line++; col = 1; } else { col++; }
        pos++;
    }

    void skip_ws() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == ';') {
                while (pos < text.size() && text[pos] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                advance();
            } else {
                break;
            }
        }
    }

    bool eof() { skip_ws(); return pos >= text.size(); }
};

bool atom_char(char c) {
    return c != '(' && c != ')' && c != ';' && c != ' ' && c != '\t' &&
           c != '\n' && c != '\r';
}

Sexpr parse_one(Lexer& lx) {
    lx.skip_ws();
    if (lx.pos >= lx.text.size())
        throw ParseError("unexpected end of input", lx.line, lx.col);
    int line = lx.line, col = lx.col;
    char c = lx.text[lx.pos];
    if (c == ')') throw ParseError("unexpected ')'", line, col);
    if (c == '(') {
        lx.advance();
        Sexpr e;
        e.line = line; e.col = col;
        while (true) {
            lx.skip_ws();
            if (lx.pos >= lx.text.size())
                throw ParseError("unclosed '('", line, col);
            if (lx.text[lx.pos] == ')') { lx.advance(); break; }
            e.items.push_back(parse_one(lx));
        }
        return e;
    }
    std::string a;
    while (lx.pos < lx.text.size() && atom_char(lx.text[lx.pos])) {
        a.push_back(lx.text[lx.pos]);
        lx.advance();
    }
    Sexpr e = Sexpr::mk_atom(a);
    e.line = line; e.col = col;
    return e;
}

}  // namespace

Sexpr parse_sexpr(const std::string& text) {
    Lexer lx{text};
    Sexpr e = parse_one(lx);
    if (!lx.eof())
        throw ParseError("trailing input", lx.line, lx.col);
    return e;
}

std::vector<Sexpr> parse_sexpr_file(const std::string& text) {
    Lexer lx{text};
    std::vector<Sexpr> out;
    while (!lx.eof()) out.push_back(parse_one(lx));
    return out;
}

std::string print_sexpr(const Sexpr& e) {
    if (e.is_atom) return e.atom;
    std::string s = "(";
    for (size_t i = 0; i < e.items.size(); i++) {
        if (i) s += ' ';
        s += print_sexpr(e.items[i]);
    }
    s += ')';
    return s;
}

bool tagged(const Sexpr& e, const std::string& tag) {
    return !e.is_atom && !e.items.empty() && e.items[0].is_atom &&
           e.items[0].atom == tag;
}

}  // namespace rwb
