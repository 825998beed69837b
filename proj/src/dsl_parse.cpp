#include <cctype>
#include <sstream>

#include "crt/dsl.hpp"

// Manifest grammar (see docs/manifest.md for the formal version):
//
//   manifest := { stmt }
//   stmt     := "order" INT
//             | "implicit" IDENT ":" expr "=" expr
//             | "manifold" IDENT "{" { mstmt } "}"
//             | "map" IDENT ":" IDENT "->" IDENT "{" { cstmt } "}"
//             | "task" IDENT { IDENT | INT }
//   mstmt    := "n" INT | "d" INT | ("rho" | "Q") [INT] "=" expr
//   cstmt    := ("F" | "G") [INT] "=" expr
//   expr     := ["-"] term { ("+" | "-") term }
//   term     := factor { "*" factor }
//   factor   := base [ "^" INT ]
//   base     := NUMBER | "i" | IDENT [ "(" expr ")" ] | "(" expr ")"
//   NUMBER   := INT [ "/" INT ]
//
// Statements are separated by newlines or ";"; "#" starts a comment.

namespace crt {
namespace dsl {

namespace {

struct Token {
    enum class Kind { Ident, Int, Punct, Newline, End };
    Kind kind;
    std::string text;
    Pos pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
                continue;
            }
            if (c == '\n' || c == ';') {
                out.push_back({Token::Kind::Newline, std::string(1, c), here()});
                advance();
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                Pos p = here();
                std::string num;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    num += text_[pos_];
                    advance();
                }
                out.push_back({Token::Kind::Int, num, p});
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                Pos p = here();
                std::string id;
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                    id += text_[pos_];
                    advance();
                }
                out.push_back({Token::Kind::Ident, id, p});
                continue;
            }
            Pos p = here();
            if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                out.push_back({Token::Kind::Punct, "->", p});
                advance();
                advance();
                continue;
            }
            static const std::string punct = "{}():=+-*^/";
            if (punct.find(c) != std::string::npos) {
                out.push_back({Token::Kind::Punct, std::string(1, c), p});
                advance();
                continue;
            }
            fail(ErrorKind::SyntaxError, at(p) + "unexpected character '" + std::string(1, c) + "'");
        }
        out.push_back({Token::Kind::End, "", here()});
        return out;
    }

    static std::string at(Pos p) {
        return "line " + std::to_string(p.line + 1) + ":" + std::to_string(p.col + 1) + ": ";
    }

private:
    Pos here() const { return Pos{line_, col_}; }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 0;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 0;
    int col_ = 0;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : t_(std::move(tokens)) {}

    Manifest run() {
        Manifest m;
        skip_newlines();
        while (!at_end()) {
            const Token& tok = peek();
            if (tok.kind != Token::Kind::Ident)
                fail(ErrorKind::SyntaxError, Lexer::at(tok.pos) + "expected a statement keyword");
            if (tok.text == "order") {
                next();
                m.order = expect_int();
            } else if (tok.text == "implicit") {
                m.implicits.push_back(parse_implicit());
            } else if (tok.text == "manifold") {
                m.manifolds.push_back(parse_manifold());
            } else if (tok.text == "map") {
                if (m.map) fail(ErrorKind::SyntaxError, Lexer::at(tok.pos) + "only one map per manifest");
                m.map = parse_map();
            } else if (tok.text == "task") {
                m.tasks.push_back(parse_task());
            } else {
                fail(ErrorKind::SyntaxError,
                     Lexer::at(tok.pos) + "unknown statement '" + tok.text + "'");
            }
            end_statement();
        }
        return m;
    }

private:
    bool at_end() const { return peek().kind == Token::Kind::End; }
    const Token& peek(int off = 0) const { return t_[std::min(i_ + static_cast<size_t>(off), t_.size() - 1)]; }
    const Token& next() { return t_[i_++]; }

    void skip_newlines() {
        while (peek().kind == Token::Kind::Newline) next();
    }

    void end_statement() {
        if (peek().kind == Token::Kind::End) return;
        if (peek().kind != Token::Kind::Newline)
            fail(ErrorKind::SyntaxError, Lexer::at(peek().pos) + "expected end of statement, got '" +
                                             peek().text + "'");
        skip_newlines();
    }

    bool accept_punct(const std::string& p) {
        if (peek().kind == Token::Kind::Punct && peek().text == p) {
            next();
            return true;
        }
        return false;
    }

    void expect_punct(const std::string& p) {
        if (!accept_punct(p))
            fail(ErrorKind::SyntaxError,
                 Lexer::at(peek().pos) + "expected '" + p + "', got '" + peek().text + "'");
    }

    std::string expect_ident() {
        if (peek().kind != Token::Kind::Ident)
            fail(ErrorKind::SyntaxError, Lexer::at(peek().pos) + "expected an identifier");
        return next().text;
    }

    int expect_int() {
        if (peek().kind != Token::Kind::Int)
            fail(ErrorKind::SyntaxError, Lexer::at(peek().pos) + "expected an integer");
        return std::stoi(next().text);
    }

    ImplicitDecl parse_implicit() {
        ImplicitDecl decl;
        decl.pos = peek().pos;
        next(); // implicit
        decl.name = expect_ident();
        expect_punct(":");
        decl.lhs = parse_expr();
        expect_punct("=");
        decl.rhs = parse_expr();
        return decl;
    }

    ManifoldDecl parse_manifold() {
        ManifoldDecl decl;
        decl.pos = peek().pos;
        next(); // manifold
        decl.name = expect_ident();
        expect_punct("{");
        skip_newlines();
        bool saw_rho = false, saw_q = false;
        while (!accept_punct("}")) {
            std::string kw = expect_ident();
            if (kw == "n") {
                decl.n = expect_int();
            } else if (kw == "d") {
                decl.d = expect_int();
            } else if (kw == "rho" || kw == "Q") {
                (kw == "rho" ? saw_rho : saw_q) = true;
                SeriesDef def;
                def.label = kw;
                def.pos = peek().pos;
                if (peek().kind == Token::Kind::Int) def.index = expect_int();
                expect_punct("=");
                def.expr = parse_expr();
                decl.defs.push_back(std::move(def));
            } else {
                fail(ErrorKind::SyntaxError,
                     Lexer::at(peek().pos) + "unknown manifold field '" + kw + "'");
            }
            skip_newlines();
        }
        if (saw_rho && saw_q)
            fail(ErrorKind::SyntaxError,
                 Lexer::at(decl.pos) + "manifold '" + decl.name + "' mixes rho and Q definitions");
        decl.normal_form = saw_q;
        return decl;
    }

    MapDecl parse_map() {
        MapDecl decl;
        decl.pos = peek().pos;
        next(); // map
        decl.name = expect_ident();
        expect_punct(":");
        decl.src = expect_ident();
        expect_punct("->");
        decl.tgt = expect_ident();
        expect_punct("{");
        skip_newlines();
        while (!accept_punct("}")) {
            std::string kw = expect_ident();
            if (kw != "F" && kw != "G")
                fail(ErrorKind::SyntaxError, Lexer::at(peek().pos) + "expected F or G component");
            SeriesDef def;
            def.label = kw;
            def.pos = peek().pos;
            if (peek().kind == Token::Kind::Int) def.index = expect_int();
            expect_punct("=");
            def.expr = parse_expr();
            (kw == "F" ? decl.fs : decl.gs).push_back(std::move(def));
            skip_newlines();
        }
        return decl;
    }

    TaskDecl parse_task() {
        TaskDecl decl;
        decl.pos = peek().pos;
        next(); // task
        decl.op = expect_ident();
        while (peek().kind == Token::Kind::Ident || peek().kind == Token::Kind::Int)
            decl.args.push_back(next().text);
        return decl;
    }

    ExprPtr make(Expr e) { return std::make_shared<Expr>(std::move(e)); }

    ExprPtr parse_expr() {
        bool neg = false;
        if (peek().kind == Token::Kind::Punct && peek().text == "-") {
            next();
            neg = true;
        }
        ExprPtr lhs = parse_term();
        if (neg) {
            Expr e;
            e.kind = Expr::Kind::Neg;
            e.pos = lhs->pos;
            e.kids = {lhs};
            lhs = make(std::move(e));
        }
        while (peek().kind == Token::Kind::Punct && (peek().text == "+" || peek().text == "-")) {
            bool add = next().text == "+";
            ExprPtr rhs = parse_term();
            Expr e;
            e.kind = add ? Expr::Kind::Add : Expr::Kind::Sub;
            e.pos = lhs->pos;
            e.kids = {lhs, rhs};
            lhs = make(std::move(e));
        }
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (peek().kind == Token::Kind::Punct && peek().text == "*") {
            next();
            ExprPtr rhs = parse_factor();
            Expr e;
            e.kind = Expr::Kind::Mul;
            e.pos = lhs->pos;
            e.kids = {lhs, rhs};
            lhs = make(std::move(e));
        }
        return lhs;
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_base();
        if (peek().kind == Token::Kind::Punct && peek().text == "^") {
            next();
            int exp = expect_int();
            Expr e;
            e.kind = Expr::Kind::Pow;
            e.pos = base->pos;
            e.exponent = exp;
            e.kids = {base};
            return make(std::move(e));
        }
        return base;
    }

    ExprPtr parse_base() {
        const Token& tok = peek();
        if (tok.kind == Token::Kind::Int) {
            Pos p = tok.pos;
            std::string num = next().text;
            Expr e;
            e.kind = Expr::Kind::Number;
            e.pos = p;
            if (peek().kind == Token::Kind::Punct && peek().text == "/") {
                next();
                if (peek().kind != Token::Kind::Int)
                    fail(ErrorKind::SyntaxError, Lexer::at(peek().pos) + "expected a denominator");
                std::string den = next().text;
                if (den == "0") fail(ErrorKind::SyntaxError, Lexer::at(p) + "zero denominator");
                e.number = parse_rational(num + "/" + den);
            } else {
                e.number = parse_rational(num);
            }
            return make(std::move(e));
        }
        if (tok.kind == Token::Kind::Punct && tok.text == "(") {
            next();
            ExprPtr inner = parse_expr();
            expect_punct(")");
            return inner;
        }
        if (tok.kind == Token::Kind::Punct && tok.text == "-") {
            next();
            ExprPtr operand = parse_factor();
            Expr e;
            e.kind = Expr::Kind::Neg;
            e.pos = tok.pos;
            e.kids = {operand};
            return make(std::move(e));
        }
        if (tok.kind != Token::Kind::Ident)
            fail(ErrorKind::SyntaxError, Lexer::at(tok.pos) + "expected an expression, got '" +
                                             tok.text + "'");
        std::string name = next().text;
        if (name == "i") {
            Expr e;
            e.kind = Expr::Kind::ImagUnit;
            e.pos = tok.pos;
            return make(std::move(e));
        }
        if (name == "conj" || name == "Re" || name == "Im") {
            expect_punct("(");
            ExprPtr arg = parse_expr();
            expect_punct(")");
            Expr e;
            e.kind = name == "conj" ? Expr::Kind::Conj : name == "Re" ? Expr::Kind::Re : Expr::Kind::Im;
            e.pos = tok.pos;
            e.kids = {arg};
            return make(std::move(e));
        }
        if (peek().kind == Token::Kind::Punct && peek().text == "(") {
            next();
            ExprPtr arg = parse_expr();
            expect_punct(")");
            Expr e;
            e.kind = Expr::Kind::Call;
            e.pos = tok.pos;
            e.name = name;
            e.kids = {arg};
            return make(std::move(e));
        }
        Expr e;
        e.kind = Expr::Kind::Var;
        e.pos = tok.pos;
        e.name = name;
        return make(std::move(e));
    }

    std::vector<Token> t_;
    size_t i_ = 0;
};

void print_expr(std::ostringstream& os, const Expr& e, int parent_prec);

int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
        case Expr::Kind::Neg: return 1;
        case Expr::Kind::Mul: return 2;
        case Expr::Kind::Pow: return 3;
        default: return 4;
    }
}

void print_expr(std::ostringstream& os, const Expr& e, int parent_prec) {
    int prec = precedence(e.kind);
    bool paren = prec < parent_prec;
    if (paren) os << "(";
    switch (e.kind) {
        case Expr::Kind::Number: os << e.number; break;
        case Expr::Kind::ImagUnit: os << "i"; break;
        case Expr::Kind::Var: os << e.name; break;
        case Expr::Kind::Call:
            os << e.name << "(";
            print_expr(os, *e.kids[0], 0);
            os << ")";
            break;
        case Expr::Kind::Conj:
        case Expr::Kind::Re:
        case Expr::Kind::Im:
            os << (e.kind == Expr::Kind::Conj ? "conj" : e.kind == Expr::Kind::Re ? "Re" : "Im") << "(";
            print_expr(os, *e.kids[0], 0);
            os << ")";
            break;
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            print_expr(os, *e.kids[0], prec);
            os << (e.kind == Expr::Kind::Add ? " + " : " - ");
            print_expr(os, *e.kids[1], prec + 1);
            break;
        case Expr::Kind::Mul:
            print_expr(os, *e.kids[0], prec);
            os << "*";
            print_expr(os, *e.kids[1], prec + 1);
            break;
        case Expr::Kind::Neg:
            os << "-";
            print_expr(os, *e.kids[0], prec + 1);
            break;
        case Expr::Kind::Pow:
            print_expr(os, *e.kids[0], prec + 1);
            os << "^" << e.exponent;
            break;
    }
    if (paren) os << ")";
}

void print_series(std::ostringstream& os, const SeriesDef& def) {
    os << "  " << def.label;
    if (def.index > 0) os << def.index;
    os << " = ";
    print_expr(os, *def.expr, 0);
    os << "\n";
}

} // namespace

Manifest parse(std::string_view text) {
    Lexer lexer(text);
    Parser parser(lexer.run());
    return parser.run();
}

std::string pretty(const Expr& e) {
    std::ostringstream os;
    print_expr(os, e, 0);
    return os.str();
}

std::string pretty(const Manifest& m) {
    std::ostringstream os;
    if (m.order > 0) os << "order " << m.order << "\n";
    for (const auto& imp : m.implicits) {
        os << "implicit " << imp.name << ": ";
        print_expr(os, *imp.lhs, 0);
        os << " = ";
        print_expr(os, *imp.rhs, 0);
        os << "\n";
    }
    for (const auto& man : m.manifolds) {
        os << "manifold " << man.name << " {\n";
        os << "  n " << man.n << "\n";
        os << "  d " << man.d << "\n";
        for (const auto& def : man.defs) print_series(os, def);
        os << "}\n";
    }
    if (m.map) {
        os << "map " << m.map->name << ": " << m.map->src << " -> " << m.map->tgt << " {\n";
        for (const auto& def : m.map->fs) print_series(os, def);
        for (const auto& def : m.map->gs) print_series(os, def);
        os << "}\n";
    }
    for (const auto& task : m.tasks) {
        os << "task " << task.op;
        for (const auto& a : task.args) os << " " << a;
        os << "\n";
    }
    return os.str();
}

} // namespace dsl
} // namespace crt
