#include "expzero/enumerate.hpp"

#include <algorithm>
#include <numeric>

namespace expzero {

TermEnumerator::TermEnumerator(std::vector<std::string> vars,
                               std::vector<GaussianRational> constants, unsigned max_weight)
    : vars_(std::move(vars)), consts_(std::move(constants)), max_weight_(max_weight) {
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
    std::sort(consts_.begin(), consts_.end(),
              [](const GaussianRational& a, const GaussianRational& b) {
                  return GaussianRational::compare(a, b) < 0;
              });
    consts_.erase(std::unique(consts_.begin(), consts_.end()), consts_.end());
    by_weight_.resize(max_weight_ + 1);
    filled_.assign(max_weight_ + 1, false);
}

const std::vector<Term>& TermEnumerator::of_weight(unsigned w) {
    if (w == 0 || w > max_weight_) {
        static const std::vector<Term> empty;
        return empty;
    }
    std::vector<Term>& out = by_weight_[w];
    if (filled_[w]) return out;
    filled_[w] = true;
    // Kind order mirrors Term::compare: Const, Var, Neg, Exp, Add, Mul.
    for (const auto& c : consts_)
        if (1 + gr_bitsize(c) == w) out.push_back(Term::constant(c));
    if (w == 1)
        for (const auto& v : vars_) out.push_back(Term::variable(v));
    for (const Term& t : of_weight(w - 1)) out.push_back(Term::neg(t));
    for (const Term& t : of_weight(w - 1)) out.push_back(Term::exp(t));
    if (w >= 3) {
        for (unsigned u = 1; u + 2 <= w; ++u)
            for (const Term& a : of_weight(u))
                for (const Term& b : of_weight(w - 1 - u)) out.push_back(Term::add(a, b));
        for (unsigned u = 1; u + 2 <= w; ++u)
            for (const Term& a : of_weight(u))
                for (const Term& b : of_weight(w - 1 - u)) out.push_back(Term::mul(a, b));
    }
    return out;
}

std::optional<Term> TermEnumerator::next() {
    while (weight_ <= max_weight_) {
        const std::vector<Term>& level = of_weight(weight_);
        if (index_ < level.size()) return level[index_++];
        ++weight_;
        index_ = 0;
    }
    return std::nullopt;
}

namespace {

// Order key used inside one height band: (|num|, den, sign with + first).
bool rat_order(const mpq_class& a, const mpq_class& b) {
    mpz_class na = abs(a.get_num()), nb = abs(b.get_num());
    if (na != nb) return na < nb;
    if (a.get_den() != b.get_den()) return a.get_den() < b.get_den();
    return a > b;  // positive before negative
}

}  // namespace

std::vector<mpq_class> rationals_of_height(unsigned h) {
    std::vector<mpq_class> out;
    if (h == 0) return out;
    long lh = static_cast<long>(h);
    for (long num = 0; num <= lh; ++num) {
        for (long den = 1; den <= lh; ++den) {
            if (std::max(num, den) != lh) continue;
            if (std::gcd(num, den) != 1) continue;
            out.emplace_back(num, den);
            if (num != 0) out.emplace_back(-num, den);
        }
    }
    std::sort(out.begin(), out.end(), rat_order);
    return out;
}

std::vector<GaussianRational> gaussians_of_height(unsigned h) {
    // Cumulative rational pools up to h, with the height-h band marked.
    std::vector<mpq_class> upto;
    size_t band_start = 0;
    for (unsigned k = 1; k <= h; ++k) {
        if (k == h) band_start = upto.size();
        auto band = rationals_of_height(k);
        upto.insert(upto.end(), band.begin(), band.end());
    }
    std::vector<GaussianRational> out;
    for (size_t i = 0; i < upto.size(); ++i)
        for (size_t j = 0; j < upto.size(); ++j)
            if (i >= band_start || j >= band_start) out.emplace_back(upto[i], upto[j]);
    return out;
}

RationalTupleEnumerator rational_tuples(size_t arity, unsigned max_height) {
    return {arity, max_height, &rationals_of_height};
}

GaussianTupleEnumerator gaussian_tuples(size_t arity, unsigned max_height) {
    return {arity, max_height, &gaussians_of_height};
}

}  // namespace expzero
