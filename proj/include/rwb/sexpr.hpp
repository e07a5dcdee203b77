#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwb {

// Parse error with 1-based line/column of the offending token.
struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " at " + std::to_string(line_) + ":" +
                             std::to_string(col_)),
          line(line_), col(col_) {}
};

struct Sexpr {
    bool is_atom = false;
    std::string atom;            // valid when is_atom
    std::vector<Sexpr> items;    // valid when !is_atom
    int line = 0;
    int col = 0;

    static Sexpr mk_atom(std::string a) {
        Sexpr e; e.is_atom = true; e.atom = std::move(a); return e;
    }
    static Sexpr mk_list(std::vector<Sexpr> xs) {
        Sexpr e; e.items = std::move(xs); return e;
    }
};

// Parses exactly one s-expression; trailing input is an error.
Sexpr parse_sexpr(const std::string& text);

// Parses a sequence of top-level s-expressions (e.g. a definitions file).
std::vector<Sexpr> parse_sexpr_file(const std::string& text);

std::string print_sexpr(const Sexpr& e);

bool tagged(const Sexpr& e, const std::string& tag);

}  // namespace rwb
