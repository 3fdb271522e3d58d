#include "expzero/clauses.hpp"

#include <sstream>

namespace expzero {

namespace {

// Quantified variable names q1..qm, renamed away from the free variables of P.
std::vector<std::string> quantified_names(const Term& p, size_t m) {
    auto used = free_vars(p);
    std::vector<std::string> out;
    for (size_t i = 1; i <= m; ++i) {
        std::string name = "q" + std::to_string(i);
        while (used.count(name)) name += "_";
        out.push_back(name);
        used.insert(name);
    }
    return out;
}

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i];
    }
    return out;
}

std::string render_atom(bool existential, const std::vector<std::string>& qnames, const Term& body,
                        bool nonzero) {
    std::ostringstream os;
    os << (existential ? 'E' : 'A') << ' ' << join(qnames) << " in Q^" << qnames.size() << " : "
       << print(body) << (nonzero ? " != 0" : " = 0");
    return os.str();
}

std::map<std::string, Term> y_to_q(const std::vector<std::string>& y_vars,
                                   const std::vector<std::string>& qnames) {
    std::map<std::string, Term> binding;
    for (size_t i = 0; i < y_vars.size(); ++i)
        binding.emplace(y_vars[i], Term::variable(qnames[i]));
    return binding;
}

}  // namespace

Clause make_identically_zero_clause(const Term& p, const std::vector<std::string>& x_vars,
                                    const std::vector<std::string>& y_vars) {
    Clause c;
    c.index = 0;
    c.p = p;
    c.x_vars = x_vars;
    c.y_vars = y_vars;
    auto qnames = quantified_names(p, y_vars.size());
    c.rendered = render_atom(false, qnames, substitute(p, y_to_q(y_vars, qnames)), false);
    return c;
}

Clause make_q_clause(const Term& p, const std::vector<std::string>& x_vars,
                     const std::vector<std::string>& y_vars, unsigned index, const Term& q) {
    Clause c;
    c.index = index;
    c.q = q;
    c.p = p;
    c.x_vars = x_vars;
    c.y_vars = y_vars;
    EPoly cp = canonicalize(p), cq = canonicalize(q);
    auto qnames = quantified_names(p, y_vars.size());
    auto binding = y_to_q(y_vars, qnames);
    std::string rendered = render_atom(true, qnames, substitute(p, binding), true);
    for (const auto& y : y_vars) {
        Term numerator = to_term(flatness_numerator(cp, cq, y));
        c.numerators.push_back(numerator);
        rendered += " & " + render_atom(false, qnames, substitute(numerator, binding), false);
    }
    c.rendered = std::move(rendered);
    return c;
}

ClauseStream::ClauseStream(Term p, std::vector<std::string> x_vars,
                           std::vector<std::string> y_vars, unsigned max_weight,
                           unsigned from_index, std::vector<GaussianRational> extra_constants)
    : p_(std::move(p)),
      x_vars_(std::move(x_vars)),
      y_vars_(std::move(y_vars)),
      candidates_([&] {
          std::vector<std::string> vars = x_vars_;
          vars.insert(vars.end(), y_vars_.begin(), y_vars_.end());
          std::vector<GaussianRational> consts{GaussianRational(0), GaussianRational(1)};
          for (auto& c : constants_of(p_)) consts.push_back(std::move(c));
          for (auto& c : extra_constants) consts.push_back(std::move(c));
          return TermEnumerator(std::move(vars), std::move(consts), max_weight);
      }()),
      from_index_(from_index) {
    if (y_vars_.empty()) throw std::invalid_argument("clause stream needs at least one y variable");
}

std::optional<Clause> ClauseStream::next() {
    for (;;) {
        if (index_ == 0) {
            ++index_;
            if (from_index_ == 0) return make_identically_zero_clause(p_, x_vars_, y_vars_);
            continue;
        }
        auto q = candidates_.next();
        if (!q) return std::nullopt;
        unsigned idx = index_++;
        if (idx < from_index_) continue;
        return make_q_clause(p_, x_vars_, y_vars_, idx, *q);
    }
}

ClauseVerdict clause_holds(const Clause& clause, const std::vector<GaussianRational>& point,
                           const SearchBudget& budget) {
    validate_roles(clause.p, clause.x_vars, point, clause.y_vars);
    auto binding = bind_point(clause.x_vars, point);
    bool p_identically_zero = canonicalize(substitute(clause.p, binding)).is_zero();

    if (clause.index == 0) {
        if (p_identically_zero) return ClauseVerdict::Holds;
        auto witness = find_nonzero_witness(clause.p, binding, clause.y_vars, budget);
        return witness ? ClauseVerdict::Fails : ClauseVerdict::Unknown;
    }

    bool universal_true = true;
    for (const auto& n : clause.numerators)
        if (!canonicalize(substitute(n, binding)).is_zero()) universal_true = false;

    if (p_identically_zero) return ClauseVerdict::Fails;  // the existential part is false
    auto witness = find_nonzero_witness(clause.p, binding, clause.y_vars, budget);
    if (universal_true) return witness ? ClauseVerdict::Holds : ClauseVerdict::Unknown;

    // Certify the universal failure by a nonzero numerator sample.
    for (const auto& n : clause.numerators) {
        if (canonicalize(substitute(n, binding)).is_zero()) continue;
        if (find_nonzero_witness(n, binding, clause.y_vars, budget)) return ClauseVerdict::Fails;
    }
    return ClauseVerdict::Unknown;
}

ClauseFormula parse_clause_formula(const std::string& text) {
    ClauseFormula out;
    size_t start = 0;
    std::vector<std::string> atoms;
    for (;;) {
        size_t amp = text.find(" & ", start);
        atoms.push_back(text.substr(start, amp == std::string::npos ? amp : amp - start));
        if (amp == std::string::npos) break;
        start = amp + 3;
    }
    for (const auto& atom_text : atoms) {
        std::istringstream is(atom_text);
        std::string quant, names, in, pool, colon, body, rel, zero;
        if (!(is >> quant >> names >> in >> pool >> colon >> body >> rel >> zero))
            throw std::invalid_argument("malformed clause atom: " + atom_text);
        ClauseFormula::Atom atom;
        if (quant == "E")
            atom.existential = true;
        else if (quant == "A")
            atom.existential = false;
        else
            throw std::invalid_argument("bad quantifier: " + quant);
        if (in != "in" || colon != ":" || zero != "0" || pool.rfind("Q^", 0) != 0)
            throw std::invalid_argument("malformed clause atom: " + atom_text);
        atom.arity = static_cast<unsigned>(std::stoul(pool.substr(2)));
        size_t pos = 0;
        while (pos != std::string::npos) {
            size_t comma = names.find(',', pos);
            atom.qvars.push_back(names.substr(pos, comma == std::string::npos ? comma : comma - pos));
            pos = comma == std::string::npos ? comma : comma + 1;
        }
        if (atom.qvars.size() != atom.arity)
            throw std::invalid_argument("quantifier arity mismatch: " + atom_text);
        atom.body = parse(body);
        if (rel == "!=")
            atom.nonzero = true;
        else if (rel == "=")
            atom.nonzero = false;
        else
            throw std::invalid_argument("bad relation: " + rel);
        out.atoms.push_back(std::move(atom));
    }
    return out;
}

}  // namespace expzero
