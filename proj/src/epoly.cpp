#include "expzero/epoly.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace expzero {

// ---------------------------------------------------------------------------
// ExpConstant
// ---------------------------------------------------------------------------

ExpConstant ExpConstant::rational(GaussianRational q) {
    ExpConstant c;
    if (!q.is_zero()) c.entries_.push_back({ExpConstant(), std::move(q)});
    return c;
}

ExpConstant ExpConstant::exp_of(const ExpConstant& c) {
    ExpConstant r;
    r.entries_.push_back({c, GaussianRational(1)});
    return r;
}

bool ExpConstant::is_rational() const {
    return entries_.empty() || (entries_.size() == 1 && entries_[0].key.is_zero());
}

std::optional<GaussianRational> ExpConstant::as_rational() const {
    if (entries_.empty()) return GaussianRational();
    if (entries_.size() == 1 && entries_[0].key.is_zero()) return entries_[0].coeff;
    return std::nullopt;
}

ExpConstant ExpConstant::from_sorted(std::vector<Entry> entries) {
    ExpConstant c;
    c.entries_ = std::move(entries);
    return c;
}

ExpConstant ExpConstant::operator+(const ExpConstant& o) const {
    std::vector<Entry> out;
    out.reserve(entries_.size() + o.entries_.size());
    auto a = entries_.begin(), b = o.entries_.begin();
    while (a != entries_.end() && b != o.entries_.end()) {
        int c = compare(a->key, b->key);
        if (c < 0) {
            out.push_back(*a++);
        } else if (c > 0) {
            out.push_back(*b++);
        } else {
            GaussianRational sum = a->coeff + b->coeff;
            if (!sum.is_zero()) out.push_back({a->key, std::move(sum)});
            ++a;
            ++b;
        }
    }
    out.insert(out.end(), a, entries_.end());
    out.insert(out.end(), b, o.entries_.end());
    return from_sorted(std::move(out));
}

ExpConstant ExpConstant::operator-() const {
    std::vector<Entry> out = entries_;
    for (auto& e : out) e.coeff = -e.coeff;
    return from_sorted(std::move(out));
}

ExpConstant ExpConstant::operator*(const ExpConstant& o) const {
    std::map<ExpConstant, GaussianRational> acc;
    for (const auto& a : entries_) {
        for (const auto& b : o.entries_) {
            ExpConstant key = a.key + b.key;  // e^a * e^b = e^(a+b)
            acc[key] = acc.count(key) ? acc[key] + a.coeff * b.coeff : a.coeff * b.coeff;
        }
    }
    std::vector<Entry> out;
    for (auto& [key, coeff] : acc)
        if (!coeff.is_zero()) out.push_back({key, std::move(coeff)});
    return from_sorted(std::move(out));
}

ExpConstant ExpConstant::operator*(const GaussianRational& q) const {
    if (q.is_zero()) return {};
    std::vector<Entry> out = entries_;
    for (auto& e : out) e.coeff = e.coeff * q;
    return from_sorted(std::move(out));
}

int ExpConstant::compare(const ExpConstant& a, const ExpConstant& b) {
    if (a.entries_.size() != b.entries_.size())
        return a.entries_.size() < b.entries_.size() ? -1 : 1;
    for (size_t i = 0; i < a.entries_.size(); ++i) {
        int c = compare(a.entries_[i].key, b.entries_[i].key);
        if (c != 0) return c;
        c = GaussianRational::compare(a.entries_[i].coeff, b.entries_[i].coeff);
        if (c != 0) return c;
    }
    return 0;
}

bool ExpConstant::plain_rational_exponents() const {
    for (const auto& e : entries_)
        if (!e.key.is_rational()) return false;
    return true;
}

void ExpConstant::check_invariants() const {
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].coeff.is_zero()) throw std::logic_error("zero coefficient entry");
        if (i > 0 && compare(entries_[i - 1].key, entries_[i].key) >= 0)
            throw std::logic_error("unsorted exponent keys");
        entries_[i].key.check_invariants();
    }
}

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial Monomial::var(const std::string& name, unsigned power) {
    Monomial m;
    if (power > 0) m.exps_[name] = power;
    return m;
}

unsigned Monomial::degree(const std::string& name) const {
    auto it = exps_.find(name);
    return it == exps_.end() ? 0 : it->second;
}

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [_, p] : exps_) d += p;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial m = *this;
    for (const auto& [name, p] : o.exps_) m.exps_[name] += p;
    return m;
}

Monomial Monomial::reduce(const std::string& name) const {
    Monomial m = *this;
    auto it = m.exps_.find(name);
    assert(it != m.exps_.end());
    if (--it->second == 0) m.exps_.erase(it);
    return m;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    auto ia = a.exps_.begin(), ib = b.exps_.begin();
    while (ia != a.exps_.end() && ib != b.exps_.end()) {
        int c = ia->first.compare(ib->first);
        if (c != 0) return c;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
        ++ia;
        ++ib;
    }
    if (ia != a.exps_.end()) return 1;
    if (ib != b.exps_.end()) return -1;
    return 0;
}

// ---------------------------------------------------------------------------
// PolyPart
// ---------------------------------------------------------------------------

PolyPart PolyPart::constant(ExpConstant c) { return single(Monomial(), std::move(c)); }

PolyPart PolyPart::single(Monomial m, ExpConstant c) {
    PolyPart p;
    if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
    return p;
}

bool PolyPart::is_unit_coefficient() const {
    if (terms_.size() != 1) return false;
    const auto& [m, c] = *terms_.begin();
    auto q = c.as_rational();
    return m.is_unit() && q && q->is_one();
}

PolyPart PolyPart::operator+(const PolyPart& o) const {
    PolyPart out = *this;
    for (const auto& [m, c] : o.terms_) {
        auto it = out.terms_.find(m);
        if (it == out.terms_.end()) {
            out.terms_.emplace(m, c);
        } else {
            ExpConstant sum = it->second + c;
            if (sum.is_zero())
                out.terms_.erase(it);
            else
                it->second = std::move(sum);
        }
    }
    return out;
}

PolyPart PolyPart::operator-() const {
    PolyPart out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

PolyPart PolyPart::operator*(const PolyPart& o) const {
    PolyPart out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m = ma * mb;
            ExpConstant c = ca * cb;
            auto it = out.terms_.find(m);
            if (it == out.terms_.end()) {
                if (!c.is_zero()) out.terms_.emplace(std::move(m), std::move(c));
            } else {
                ExpConstant sum = it->second + c;
                if (sum.is_zero())
                    out.terms_.erase(it);
                else
                    it->second = std::move(sum);
            }
        }
    }
    return out;
}

ExpConstant PolyPart::unit_coefficient() const {
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? ExpConstant() : it->second;
}

bool PolyPart::has_variables() const {
    for (const auto& [m, _] : terms_)
        if (!m.is_unit()) return true;
    return false;
}

int PolyPart::compare(const PolyPart& a, const PolyPart& b) {
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
        int c = Monomial::compare(ia->first, ib->first);
        if (c != 0) return c;
        c = ExpConstant::compare(ia->second, ib->second);
        if (c != 0) return c;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// EPoly
// ---------------------------------------------------------------------------

EPoly EPoly::from_constant(ExpConstant c) {
    EPoly e;
    if (!c.is_zero()) e.terms_.push_back({EPoly(), PolyPart::constant(std::move(c))});
    return e;
}

EPoly EPoly::from_polypart(PolyPart p) {
    EPoly e;
    if (!p.is_zero()) e.terms_.push_back({EPoly(), std::move(p)});
    return e;
}

EPoly EPoly::variable(const std::string& name) {
    EPoly e;
    e.terms_.push_back({EPoly(), PolyPart::single(Monomial::var(name), ExpConstant::one())});
    return e;
}

EPoly EPoly::from_sorted(std::vector<ExpTerm> terms) {
    EPoly e;
    e.terms_ = std::move(terms);
    return e;
}

EPoly EPoly::operator+(const EPoly& o) const {
    std::vector<ExpTerm> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
        int c = compare(a->exponent, b->exponent);
        if (c < 0) {
            out.push_back(*a++);
        } else if (c > 0) {
            out.push_back(*b++);
        } else {
            PolyPart sum = a->poly + b->poly;
            if (!sum.is_zero()) out.push_back({a->exponent, std::move(sum)});
            ++a;
            ++b;
        }
    }
    out.insert(out.end(), a, terms_.end());
    out.insert(out.end(), b, o.terms_.end());
    return from_sorted(std::move(out));
}

EPoly EPoly::operator-() const {
    std::vector<ExpTerm> out = terms_;
    for (auto& t : out) t.poly = -t.poly;
    return from_sorted(std::move(out));
}

EPoly EPoly::operator*(const EPoly& o) const {
    std::map<EPoly, PolyPart> acc;
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            EPoly expo = a.exponent + b.exponent;  // exp(s)*exp(t) = exp(s+t)
            PolyPart prod = a.poly * b.poly;
            auto it = acc.find(expo);
            if (it == acc.end())
                acc.emplace(std::move(expo), std::move(prod));
            else
                it->second = it->second + prod;
        }
    }
    std::vector<ExpTerm> out;
    for (auto& [expo, poly] : acc)
        if (!poly.is_zero()) out.push_back({expo, std::move(poly)});
    return from_sorted(std::move(out));
}

EPoly EPoly::exp(const EPoly& a) {
    ExpConstant c = a.constant_part();
    EPoly s = a - from_constant(c);
    ExpConstant factor = ExpConstant::exp_of(c);
    if (s.is_zero()) return from_constant(std::move(factor));
    EPoly out;
    out.terms_.push_back({std::move(s), PolyPart::constant(std::move(factor))});
    return out;
}

ExpConstant EPoly::constant_part() const {
    for (const auto& t : terms_)
        if (t.exponent.is_zero()) return t.poly.unit_coefficient();
    return {};
}

bool EPoly::has_variables() const {
    for (const auto& t : terms_)
        if (!t.exponent.is_zero() || t.poly.has_variables()) return true;
    return false;
}

std::optional<ExpConstant> EPoly::as_constant() const {
    if (has_variables()) return std::nullopt;
    return constant_part();
}

std::set<std::string> EPoly::variables() const {
    std::set<std::string> out;
    for (const auto& t : terms_) {
        auto sub = t.exponent.variables();
        out.insert(sub.begin(), sub.end());
        for (const auto& [m, _] : t.poly.terms())
            for (const auto& [name, __] : m.exponents()) out.insert(name);
    }
    return out;
}

int EPoly::compare(const EPoly& a, const EPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
    for (size_t i = 0; i < a.terms_.size(); ++i) {
        int c = compare(a.terms_[i].exponent, b.terms_[i].exponent);
        if (c != 0) return c;
        c = PolyPart::compare(a.terms_[i].poly, b.terms_[i].poly);
        if (c != 0) return c;
    }
    return 0;
}

bool EPoly::plain_rational_exponents() const {
    for (const auto& t : terms_) {
        if (!t.exponent.plain_rational_exponents()) return false;
        for (const auto& [_, c] : t.poly.terms())
            if (!c.plain_rational_exponents()) return false;
    }
    return true;
}

void EPoly::check_invariants() const {
    for (size_t i = 0; i < terms_.size(); ++i) {
        const ExpTerm& t = terms_[i];
        if (t.poly.is_zero()) throw std::logic_error("zero polynomial part");
        if (i > 0 && compare(terms_[i - 1].exponent, t.exponent) >= 0)
            throw std::logic_error("unsorted exponents");
        if (!t.exponent.is_zero()) {
            if (!t.exponent.constant_part().is_zero())
                throw std::logic_error("exponent with unextracted constant part");
            t.exponent.check_invariants();
        }
        for (const auto& [m, c] : t.poly.terms()) {
            if (c.is_zero()) throw std::logic_error("zero coefficient");
            c.check_invariants();
            for (const auto& [_, p] : m.exponents())
                if (p == 0) throw std::logic_error("zero monomial exponent");
        }
    }
}

// ---------------------------------------------------------------------------
// Conversions
// ---------------------------------------------------------------------------

EPoly canonicalize(const Term& t) {
    switch (t.kind()) {
        case TermKind::Const: return EPoly::from_gaussian(t.value());
        case TermKind::Var: return EPoly::variable(t.name());
        case TermKind::Add: return canonicalize(t.lhs()) + canonicalize(t.rhs());
        case TermKind::Mul: return canonicalize(t.lhs()) * canonicalize(t.rhs());
        case TermKind::Neg: return -canonicalize(t.lhs());
        case TermKind::Exp: return EPoly::exp(canonicalize(t.lhs()));
    }
    throw std::logic_error("unreachable");
}

namespace {

bool gr_negative(const GaussianRational& q) {
    return q.re() < 0 || (q.re() == 0 && q.im() < 0);
}

// q * e^gamma as a term, with the sign pulled out front for readability.
Term atom_term(const ExpConstant& gamma, const GaussianRational& q) {
    bool negate = gr_negative(q);
    GaussianRational mag = negate ? -q : q;
    Term base = Term::constant(mag);
    if (!gamma.is_zero()) {
        Term ex = Term::exp(to_term(gamma));
        base = mag.is_one() ? ex : Term::mul(std::move(base), std::move(ex));
    }
    return negate ? Term::neg(std::move(base)) : base;
}

Term fold_add(std::vector<Term> parts) {
    if (parts.empty()) return Term::constant(GaussianRational());
    Term acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) acc = Term::add(std::move(acc), parts[i]);
    return acc;
}

Term monomial_term(const Monomial& m) {
    Term acc = Term::constant(GaussianRational(1));
    bool first = true;
    for (const auto& [name, power] : m.exponents()) {
        for (unsigned k = 0; k < power; ++k) {
            Term v = Term::variable(name);
            acc = first ? std::move(v) : Term::mul(std::move(acc), std::move(v));
            first = false;
        }
    }
    return acc;
}

bool is_rational_one(const ExpConstant& c) {
    auto q = c.as_rational();
    return q && q->is_one();
}

// coeff * mono, hoisting a leading negation out of single-entry coefficients.
Term poly_entry_term(const Monomial& m, const ExpConstant& c) {
    if (m.is_unit()) return to_term(c);
    Term mono = monomial_term(m);
    if (is_rational_one(c)) return mono;
    Term coeff = to_term(c);
    if (coeff.kind() == TermKind::Neg) {
        Term inner = coeff.lhs();
        auto q = GaussianRational(1);
        bool inner_one = inner.kind() == TermKind::Const && inner.value() == q;
        return Term::neg(inner_one ? std::move(mono) : Term::mul(std::move(inner), std::move(mono)));
    }
    return Term::mul(std::move(coeff), std::move(mono));
}

Term poly_term(const PolyPart& p) {
    std::vector<Term> parts;
    for (const auto& [m, c] : p.terms()) parts.push_back(poly_entry_term(m, c));
    return fold_add(std::move(parts));
}

}  // namespace

Term to_term(const ExpConstant& c) {
    std::vector<Term> parts;
    for (const auto& e : c.entries()) parts.push_back(atom_term(e.key, e.coeff));
    return fold_add(std::move(parts));
}

Term to_term(const EPoly& a) {
    std::vector<Term> parts;
    for (const auto& t : a.terms()) {
        if (t.exponent.is_zero()) {
            parts.push_back(poly_term(t.poly));
            continue;
        }
        Term ex = Term::exp(to_term(t.exponent));
        if (t.poly.is_unit_coefficient()) {
            parts.push_back(std::move(ex));
            continue;
        }
        Term p = poly_term(t.poly);
        if (p.kind() == TermKind::Neg) {
            Term inner = p.lhs();
            bool inner_one =
                inner.kind() == TermKind::Const && inner.value() == GaussianRational(1);
            parts.push_back(Term::neg(
                inner_one ? std::move(ex) : Term::mul(std::move(inner), std::move(ex))));
        } else {
            parts.push_back(Term::mul(std::move(p), std::move(ex)));
        }
    }
    return fold_add(std::move(parts));
}

ZeroTestRegime zero_test_regime(const EPoly& a) {
    return a.plain_rational_exponents() ? ZeroTestRegime::Unconditional
                                        : ZeroTestRegime::SchanuelConditional;
}

ZeroTestRegime zero_test_regime(const ExpConstant& c) {
    return c.plain_rational_exponents() ? ZeroTestRegime::Unconditional
                                        : ZeroTestRegime::SchanuelConditional;
}

}  // namespace expzero
