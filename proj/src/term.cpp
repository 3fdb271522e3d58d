#include "expzero/term.hpp"

#include <cctype>
#include <sstream>

namespace expzero {

namespace {

unsigned int_bits(const mpz_class& n) {
    if (n == 0) return 0;
    mpz_class a = abs(n);
    return static_cast<unsigned>(mpz_sizeinbase(a.get_mpz_t(), 2)) - 1;
}

unsigned rat_bits(const mpq_class& q) {
    return int_bits(q.get_num()) + int_bits(q.get_den());
}

int kind_rank(TermKind k) {
    switch (k) {
        case TermKind::Const: return 0;
        case TermKind::Var: return 1;
        case TermKind::Neg: return 2;
        case TermKind::Exp: return 3;
        case TermKind::Add: return 4;
        case TermKind::Mul: return 5;
    }
    return 6;
}

}  // namespace

unsigned gr_bitsize(const GaussianRational& g) {
    return rat_bits(g.re()) + rat_bits(g.im());
}

Term Term::constant(GaussianRational value) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Const;
    n->weight = 1 + gr_bitsize(value);
    n->value = std::move(value);
    return Term(std::move(n));
}

Term Term::variable(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Var;
    n->name = std::move(name);
    n->weight = 1;
    return Term(std::move(n));
}

Term Term::add(Term lhs, Term rhs) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Add;
    n->weight = 1 + lhs.weight() + rhs.weight();
    n->lhs = std::move(lhs.node_);
    n->rhs = std::move(rhs.node_);
    return Term(std::move(n));
}

Term Term::mul(Term lhs, Term rhs) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Mul;
    n->weight = 1 + lhs.weight() + rhs.weight();
    n->lhs = std::move(lhs.node_);
    n->rhs = std::move(rhs.node_);
    return Term(std::move(n));
}

Term Term::neg(Term operand) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Neg;
    n->weight = 1 + operand.weight();
    n->lhs = std::move(operand.node_);
    return Term(std::move(n));
}

Term Term::exp(Term operand) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Exp;
    n->weight = 1 + operand.weight();
    n->lhs = std::move(operand.node_);
    return Term(std::move(n));
}

int Term::compare(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return 0;
    if (a.weight() != b.weight()) return a.weight() < b.weight() ? -1 : 1;
    int ra = kind_rank(a.kind()), rb = kind_rank(b.kind());
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a.kind()) {
        case TermKind::Const: return GaussianRational::compare(a.value(), b.value());
        case TermKind::Var: return a.name().compare(b.name());
        case TermKind::Neg:
        case TermKind::Exp: return compare(a.lhs(), b.lhs());
        case TermKind::Add:
        case TermKind::Mul: {
            int c = compare(a.lhs(), b.lhs());
            if (c != 0) return c;
            return compare(a.rhs(), b.rhs());
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    Term run() {
        Term t = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return t;
    }

private:
    const std::string& text_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    Term parse_sum() {
        Term t = parse_prod();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                t = Term::add(t, parse_prod());
            } else if (c == '-') {
                ++pos_;
                t = Term::add(t, Term::neg(parse_prod()));
            } else {
                break;
            }
        }
        return t;
    }

    Term parse_prod() {
        Term t = parse_unary();
        while (peek() == '*') {
            ++pos_;
            t = Term::mul(t, parse_unary());
        }
        return t;
    }

    Term parse_unary() {
        if (peek() == '-') {
            ++pos_;
            return Term::neg(parse_unary());
        }
        return parse_atom();
    }

    Term parse_atom() {
        char c = peek();
        if (c == '\0') fail("unexpected end of input");
        if (isdigit(static_cast<unsigned char>(c))) return parse_const(false);
        if (c == '(') {
            size_t mark = pos_;
            ++pos_;
            // A parenthesized complex constant takes priority over a
            // parenthesized term; backtrack if it does not match.
            try {
                Term t = parse_const(true);
                expect(')');
                return t;
            } catch (const ParseError&) {
                pos_ = mark + 1;
            }
            Term t = parse_sum();
            expect(')');
            return t;
        }
        if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id = parse_ident();
            if (id == "exp") {
                expect('(');
                Term arg = parse_sum();
                expect(')');
                return Term::exp(std::move(arg));
            }
            return Term::variable(std::move(id));
        }
        fail("unexpected character");
    }

    std::string parse_ident() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    // paren_complex: inside '(...)', only the full "re ('+'|'-') im i" form is
    // a constant; anything else (including "(-3)") is left to the term rules.
    Term parse_const(bool paren_complex) {
        if (paren_complex) {
            mpq_class re = parse_rational(true);
            char c = peek();
            if (c != '+' && c != '-') fail("expected complex constant");
            ++pos_;
            mpq_class im = parse_rational(false);
            if (c == '-') im = -im;
            if (!imaginary_marker()) fail("expected 'i'");
            return Term::constant({std::move(re), std::move(im)});
        }
        mpq_class first = parse_rational(false);
        if (imaginary_marker()) return Term::constant({0, std::move(first)});
        return Term::constant({std::move(first)});
    }

    bool imaginary_marker() {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == 'i') {
            bool ident_tail = pos_ + 1 < text_.size() &&
                              (isalnum(static_cast<unsigned char>(text_[pos_ + 1])) ||
                               text_[pos_ + 1] == '_');
            if (!ident_tail) {
                ++pos_;
                return true;
            }
        }
        return false;
    }

    mpq_class parse_rational(bool allow_signed) {
        skip_ws();
        bool negative = false;
        if (allow_signed && pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            negative = text_[pos_] == '-';
            ++pos_;
        }
        size_t start = pos_;
        while (pos_ < text_.size() && isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("malformed constant");
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            size_t den = pos_;
            while (pos_ < text_.size() && isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == den) fail("malformed constant");
            if (text_[den] == '0') fail("zero denominator");
        }
        mpq_class q;
        if (q.set_str(text_.substr(start, pos_ - start), 10) != 0) fail("malformed constant");
        q.canonicalize();
        return negative ? mpq_class(-q) : q;
    }
};

// Precedence levels: Add 0, Mul 1, Neg 2, atoms 3.
int prec(const Term& t) {
    switch (t.kind()) {
        case TermKind::Add: return 0;
        case TermKind::Mul: return 1;
        case TermKind::Neg: return 2;
        default: return 3;
    }
}

void print_to(const Term& t, int min_prec, std::string& out) {
    bool wrap = prec(t) < min_prec;
    if (wrap) out += '(';
    switch (t.kind()) {
        case TermKind::Const: {
            const GaussianRational& v = t.value();
            if (v.is_real() && v.re() >= 0) {
                out += v.re().get_str();
            } else if (v.re() == 0 && v.im() > 0) {
                out += v.im().get_str();
                out += 'i';
            } else {
                // General form needs its own parentheses to parse as one node.
                out += '(';
                out += v.re().get_str();
                out += (v.im() < 0 ? '-' : '+');
                out += mpq_class(abs(v.im())).get_str();
                out += 'i';
                out += ')';
            }
            break;
        }
        case TermKind::Var:
            out += t.name();
            break;
        case TermKind::Exp:
            out += "exp(";
            print_to(t.lhs(), 0, out);
            out += ')';
            break;
        case TermKind::Neg:
            out += '-';
            print_to(t.lhs(), 2, out);
            break;
        case TermKind::Add: {
            print_to(t.lhs(), 0, out);
            Term r = t.rhs();
            if (r.kind() == TermKind::Neg) {
                out += '-';
                print_to(r.lhs(), 1, out);
            } else {
                out += '+';
                print_to(r, 1, out);
            }
            break;
        }
        case TermKind::Mul:
            print_to(t.lhs(), 1, out);
            out += '*';
            print_to(t.rhs(), 2, out);
            break;
    }
    if (wrap) out += ')';
}

void collect_vars(const Term& t, std::set<std::string>& out) {
    switch (t.kind()) {
        case TermKind::Const: return;
        case TermKind::Var: out.insert(t.name()); return;
        case TermKind::Neg:
        case TermKind::Exp: collect_vars(t.lhs(), out); return;
        case TermKind::Add:
        case TermKind::Mul:
            collect_vars(t.lhs(), out);
            collect_vars(t.rhs(), out);
            return;
    }
}

}  // namespace

Term parse(const std::string& text) { return Parser(text).run(); }

std::string print(const Term& t) {
    std::string out;
    print_to(t, 0, out);
    return out;
}

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> out;
    collect_vars(t, out);
    return out;
}

Term substitute(const Term& t, const std::map<std::string, GaussianRational>& values) {
    std::map<std::string, Term> binding;
    for (const auto& [name, v] : values) binding.emplace(name, Term::constant(v));
    return substitute(t, binding);
}

namespace {

void collect_constants(const Term& t, std::vector<GaussianRational>& out) {
    switch (t.kind()) {
        case TermKind::Const: out.push_back(t.value()); return;
        case TermKind::Var: return;
        case TermKind::Neg:
        case TermKind::Exp: collect_constants(t.lhs(), out); return;
        case TermKind::Add:
        case TermKind::Mul:
            collect_constants(t.lhs(), out);
            collect_constants(t.rhs(), out);
            return;
    }
}

}  // namespace

std::vector<GaussianRational> constants_of(const Term& t) {
    std::vector<GaussianRational> out;
    collect_constants(t, out);
    return out;
}

Term substitute(const Term& t, const std::map<std::string, Term>& binding) {
    switch (t.kind()) {
        case TermKind::Const: return t;
        case TermKind::Var: {
            auto it = binding.find(t.name());
            return it == binding.end() ? t : it->second;
        }
        case TermKind::Neg: return Term::neg(substitute(t.lhs(), binding));
        case TermKind::Exp: return Term::exp(substitute(t.lhs(), binding));
        case TermKind::Add:
            return Term::add(substitute(t.lhs(), binding), substitute(t.rhs(), binding));
        case TermKind::Mul:
            return Term::mul(substitute(t.lhs(), binding), substitute(t.rhs(), binding));
    }
    throw std::logic_error("unreachable");
}

}  // namespace expzero
