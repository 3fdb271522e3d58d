#include "expzero/numerics.hpp"

namespace expzero {

ComplexInterval eval_enclosure(const Term& t, const std::map<std::string, ComplexInterval>& env,
                               long bits) {
    switch (t.kind()) {
        case TermKind::Const: return ComplexInterval::from_gaussian(t.value(), bits);
        case TermKind::Var: {
            auto it = env.find(t.name());
            if (it == env.end()) throw EvalError("unbound variable: " + t.name());
            return it->second;
        }
        case TermKind::Add:
            return (eval_enclosure(t.lhs(), env, bits) + eval_enclosure(t.rhs(), env, bits))
                .round_outward(bits);
        case TermKind::Mul:
            return (eval_enclosure(t.lhs(), env, bits) * eval_enclosure(t.rhs(), env, bits))
                .round_outward(bits);
        case TermKind::Neg: return -eval_enclosure(t.lhs(), env, bits);
        case TermKind::Exp: return interval_exp(eval_enclosure(t.lhs(), env, bits), bits);
    }
    throw std::logic_error("unreachable");
}

ComplexInterval eval_enclosure(const Term& t, const std::map<std::string, GaussianRational>& point,
                               long bits) {
    std::map<std::string, ComplexInterval> env;
    for (const auto& [name, value] : point)
        env.emplace(name, ComplexInterval::from_gaussian(value, bits));
    return eval_enclosure(t, env, bits);
}

ComplexInterval enclose(const ExpConstant& c, long bits) {
    long work = bits + 8;
    ComplexInterval acc = ComplexInterval::point(Dyadic(0), Dyadic(0));
    for (const auto& entry : c.entries()) {
        ComplexInterval coeff = ComplexInterval::from_gaussian(entry.coeff, work);
        ComplexInterval factor = interval_exp(enclose(entry.key, work), work);
        acc = (acc + coeff * factor).round_outward(work);
    }
    return acc.round_outward(bits);
}

ExpConstant eval_exact(const Term& t, const std::map<std::string, GaussianRational>& point) {
    std::map<std::string, Term> binding;
    for (const auto& [name, value] : point) binding.emplace(name, Term::constant(value));
    for (const auto& v : free_vars(t))
        if (!binding.count(v)) throw EvalError("unbound variable: " + v);
    EPoly e = canonicalize(substitute(t, binding));
    auto c = e.as_constant();
    if (!c) throw std::logic_error("substitution left variables behind");
    return *c;
}

NonzeroVerdict certify_nonzero(const ExpConstant& c, long max_bits) {
    if (c.is_zero()) return {NonzeroKind::Zero};
    for (long bits = 32;; bits *= 2) {
        if (bits > std::max(32L, max_bits)) break;
        try {
            if (!enclose(c, bits).contains_zero()) return {NonzeroKind::Nonzero, bits};
        } catch (const EnclosureOverflow&) {
            break;
        }
    }
    return {NonzeroKind::Inconclusive};
}

}  // namespace expzero
