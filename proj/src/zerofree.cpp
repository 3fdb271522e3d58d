#include "expzero/zerofree.hpp"

#include <random>

#include "expzero/parallel.hpp"

namespace expzero {

void validate_roles(const Term& p, const std::vector<std::string>& x_vars,
                    const std::vector<GaussianRational>& point,
                    const std::vector<std::string>& y_vars) {
    if (x_vars.size() != point.size())
        throw std::invalid_argument("point arity does not match the x variables");
    std::set<std::string> xs(x_vars.begin(), x_vars.end());
    if (xs.size() != x_vars.size())
        throw std::invalid_argument("duplicate x variable");
    std::set<std::string> ys(y_vars.begin(), y_vars.end());
    if (ys.size() != y_vars.size())
        throw std::invalid_argument("duplicate y variable");
    for (const auto& y : y_vars)
        if (xs.count(y)) throw VariableRoleClash(y);
    std::set<std::string> all = xs;
    all.insert(y_vars.begin(), y_vars.end());
    for (const auto& v : free_vars(p))
        if (!all.count(v)) throw EvalError("free variable with no role: " + v);
}

std::map<std::string, GaussianRational> bind_point(const std::vector<std::string>& vars,
                                                   const std::vector<GaussianRational>& values) {
    std::map<std::string, GaussianRational> out;
    for (size_t i = 0; i < vars.size(); ++i) out.emplace(vars[i], values[i]);
    return out;
}

namespace {

// Canonical form of an EPoly after fixing the x variables.
EPoly at_point(const EPoly& e, const std::map<std::string, GaussianRational>& values) {
    return canonicalize(substitute(to_term(e), values));
}

bool condition_ii(const EPoly& p_canon, const EPoly& q_canon,
                  const std::vector<std::string>& y_vars,
                  const std::map<std::string, GaussianRational>& a_binding) {
    for (const auto& y : y_vars) {
        EPoly numerator = flatness_numerator(p_canon, q_canon, y);
        if (!at_point(numerator, a_binding).is_zero()) return false;
    }
    return true;
}

std::map<std::string, GaussianRational> merge_rational_tuple(
    const std::map<std::string, GaussianRational>& base, const std::vector<std::string>& y_vars,
    const std::vector<mpq_class>& q) {
    std::map<std::string, GaussianRational> out = base;
    for (size_t i = 0; i < y_vars.size(); ++i) out.emplace(y_vars[i], GaussianRational(q[i]));
    return out;
}

}  // namespace

std::optional<Witness> find_nonzero_witness(const Term& p,
                                            const std::map<std::string, GaussianRational>& fixed,
                                            const std::vector<std::string>& y_vars,
                                            const SearchBudget& budget) {
    auto tuples = rational_tuples(y_vars.size(), budget.max_height);
    while (auto q = tuples.next()) {
        ExpConstant value = eval_exact(p, merge_rational_tuple(fixed, y_vars, *q));
        if (value.is_zero()) continue;
        NonzeroVerdict v = certify_nonzero(value, budget.max_bits);
        if (v.kind == NonzeroKind::Nonzero) return Witness{*q, std::move(value), v.bits};
    }
    return std::nullopt;
}

CandidateResult check_candidate(const Term& p, const std::vector<std::string>& x_vars,
                                const std::vector<GaussianRational>& point, const Term& q,
                                const std::vector<std::string>& y_vars,
                                const SearchBudget& budget) {
    validate_roles(p, x_vars, point, y_vars);
    auto a_binding = bind_point(x_vars, point);
    CandidateResult result;
    result.identically_zero = canonicalize(substitute(p, a_binding)).is_zero();
    result.condition_ii_holds = condition_ii(canonicalize(p), canonicalize(q), y_vars, a_binding);
    if (!result.identically_zero)
        result.witness = find_nonzero_witness(p, a_binding, y_vars, budget);
    return result;
}

ZeroFreeCertificate extract_factor(const Term& p, const std::vector<std::string>& x_vars,
                                   const std::vector<GaussianRational>& point, const Term& q,
                                   const std::vector<std::string>& y_vars, const Witness& witness,
                                   unsigned sample_count) {
    auto a_binding = bind_point(x_vars, point);
    std::vector<mpq_class> zeros(y_vars.size(), mpq_class(0));
    auto at_zero = merge_rational_tuple(a_binding, y_vars, zeros);
    ExpConstant c_num = eval_exact(p, at_zero);
    ExpConstant c_exp = eval_exact(q, at_zero);

    std::vector<IdentityCheckpoint> checkpoints;
    std::mt19937 rng(0x5eedc0de);
    std::uniform_int_distribution<long> num_dist(-9, 9);
    std::uniform_int_distribution<long> den_dist(1, 9);
    for (unsigned s = 0; s < sample_count; ++s) {
        std::vector<mpq_class> sample;
        sample.reserve(y_vars.size());
        for (size_t i = 0; i < y_vars.size(); ++i)
            sample.push_back(make_rational(num_dist(rng), den_dist(rng)));
        auto at_sample = merge_rational_tuple(a_binding, y_vars, sample);
        ExpConstant pv = eval_exact(p, at_sample);
        ExpConstant qv = eval_exact(q, at_sample);
        // Cross-multiplied to avoid division: P(a,q) e^{Q(a,0)} = P(a,0) e^{Q(a,q)}.
        ExpConstant lhs = pv * ExpConstant::exp_of(c_exp);
        ExpConstant rhs = c_num * ExpConstant::exp_of(qv);
        if (lhs != rhs)
            throw std::logic_error("zero-free factor identity failed; refusing to emit");
        checkpoints.push_back({std::move(sample), std::move(lhs)});
    }
    return {p, x_vars, point, y_vars, q, witness, std::move(c_num), std::move(c_exp),
            std::move(checkpoints)};
}

ZeroFreeSearch::ZeroFreeSearch(Term p, std::vector<std::string> x_vars,
                               std::vector<GaussianRational> point,
                               std::vector<std::string> y_vars, SearchBudget budget,
                               unsigned threads)
    : p_(std::move(p)),
      x_vars_(std::move(x_vars)),
      point_(std::move(point)),
      y_vars_(std::move(y_vars)),
      budget_(budget),
      threads_(threads),
      candidates_([&] {
          // Candidate alphabet: both variable roles, constants of P plus 0, 1.
          std::vector<std::string> vars = x_vars_;
          vars.insert(vars.end(), y_vars_.begin(), y_vars_.end());
          std::vector<GaussianRational> consts{GaussianRational(0), GaussianRational(1)};
          for (auto& c : constants_of(p_)) consts.push_back(std::move(c));
          for (const auto& c : budget_.extra_constants) consts.push_back(c);
          return TermEnumerator(std::move(vars), std::move(consts), budget_.max_weight);
      }()) {
    validate_roles(p_, x_vars_, point_, y_vars_);
    p_canon_ = canonicalize(p_);
    p_identically_zero_ =
        canonicalize(substitute(p_, bind_point(x_vars_, point_))).is_zero();
    if (p_identically_zero_) {
        exhausted_ = true;
        exhaust_reason_ = "identically-zero";
    }
}

bool ZeroFreeSearch::ensure_witness() {
    if (!witness_ready_) {
        witness_ready_ = true;
        witness_ = find_nonzero_witness(p_, bind_point(x_vars_, point_), y_vars_, budget_);
    }
    return witness_.has_value();
}

bool ZeroFreeSearch::step() {
    if (exhausted_ || result_) return false;
    std::vector<Term> batch;
    while (batch.size() < kBatch) {
        auto q = candidates_.next();
        if (!q) break;
        EPoly canon = canonicalize(*q);
        if (!seen_.insert(canon).second) continue;  // same canonical candidate
        batch.push_back(*q);
    }
    if (batch.empty()) {
        exhausted_ = true;
        exhaust_reason_ = "candidate-weight";
        return false;
    }
    auto a_binding = bind_point(x_vars_, point_);
    std::vector<char> passes = parallel_map_ordered(batch, threads_, [&](const Term& q) -> char {
        return condition_ii(p_canon_, canonicalize(q), y_vars_, a_binding) ? 1 : 0;
    });
    for (size_t i = 0; i < batch.size(); ++i) {
        if (!passes[i]) continue;
        if (!ensure_witness()) {
            exhausted_ = true;
            exhaust_reason_ = "witness-height";
            return false;
        }
        result_ = extract_factor(p_, x_vars_, point_, batch[i], y_vars_, *witness_, 3);
        return false;
    }
    return true;
}

std::optional<ZeroFreeCertificate> search_zerofree(const Term& p,
                                                   const std::vector<std::string>& x_vars,
                                                   const std::vector<GaussianRational>& point,
                                                   const std::vector<std::string>& y_vars,
                                                   const SearchBudget& budget, unsigned threads) {
    ZeroFreeSearch search(p, x_vars, point, y_vars, budget, threads);
    while (search.step()) {
    }
    return search.result();
}

bool verify_zerofree(const ZeroFreeCertificate& cert, const SearchBudget& budget,
                     std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    try {
        validate_roles(cert.p, cert.x_vars, cert.point, cert.y_vars);
        auto a_binding = bind_point(cert.x_vars, cert.point);
        if (canonicalize(substitute(cert.p, a_binding)).is_zero())
            return fail("P is identically zero at the point");
        if (!condition_ii(canonicalize(cert.p), canonicalize(cert.q), cert.y_vars, a_binding))
            return fail("a flatness numerator does not vanish at the point");
        if (cert.witness.point.size() != cert.y_vars.size())
            return fail("witness arity mismatch");
        ExpConstant wv = eval_exact(
            cert.p, merge_rational_tuple(a_binding, cert.y_vars, cert.witness.point));
        if (wv != cert.witness.value) return fail("witness value mismatch");
        NonzeroVerdict v = certify_nonzero(wv, std::max(budget.max_bits, cert.witness.bits));
        if (v.kind != NonzeroKind::Nonzero) return fail("witness value not certified nonzero");
        std::vector<mpq_class> zeros(cert.y_vars.size(), mpq_class(0));
        auto at_zero = merge_rational_tuple(a_binding, cert.y_vars, zeros);
        if (eval_exact(cert.p, at_zero) != cert.c_numerator)
            return fail("c numerator mismatch");
        if (eval_exact(cert.q, at_zero) != cert.c_exponent)
            return fail("c exponent mismatch");
        for (const auto& check : cert.checkpoints) {
            if (check.point.size() != cert.y_vars.size())
                return fail("checkpoint arity mismatch");
            auto at = merge_rational_tuple(a_binding, cert.y_vars, check.point);
            ExpConstant lhs = eval_exact(cert.p, at) * ExpConstant::exp_of(cert.c_exponent);
            ExpConstant rhs = cert.c_numerator * ExpConstant::exp_of(eval_exact(cert.q, at));
            if (lhs != rhs || lhs != check.value) return fail("factor identity checkpoint failed");
        }
        return true;
    } catch (const std::exception& e) {
        return fail(std::string("replay error: ") + e.what());
    }
}

}  // namespace expzero
