#pragma once

#include <optional>
#include <vector>

#include "expzero/term.hpp"

namespace expzero {

// Streams every term over the given variables and constants with weight up to
// max_weight, each exactly once, in (weight, structural) order. Weight is the
// node count plus the bit sizes of the constants.
class TermEnumerator {
public:
    TermEnumerator(std::vector<std::string> vars, std::vector<GaussianRational> constants,
                   unsigned max_weight);

    std::optional<Term> next();

    // All terms of exactly this weight, in order (memoized).
    const std::vector<Term>& of_weight(unsigned w);

private:
    std::vector<std::string> vars_;
    std::vector<GaussianRational> consts_;
    unsigned max_weight_;
    unsigned weight_ = 1;
    size_t index_ = 0;
    std::vector<std::vector<Term>> by_weight_;  // [w] filled lazily
    std::vector<bool> filled_;
};

// Rationals in lowest terms with height (max of |numerator| and denominator)
// exactly h, ordered by (|numerator|, denominator, sign). Height 1 is
// {0, 1, -1}.
std::vector<mpq_class> rationals_of_height(unsigned h);

// Gaussian rationals whose component heights peak at exactly h, ordered
// componentwise; height 1 starts 0, i, -i, 1, ...
std::vector<GaussianRational> gaussians_of_height(unsigned h);

// Tuples of fixed arity in ascending max-component height; within one height
// band, lexicographic over the cumulative value list. Deterministic.
template <typename Value>
class TupleEnumerator {
public:
    using Pool = std::vector<Value> (*)(unsigned);

    TupleEnumerator(size_t arity, unsigned max_height, Pool pool)
        : arity_(arity), max_height_(max_height), pool_(pool) {}

    std::optional<std::vector<Value>> next() {
        if (arity_ == 0) {
            if (done_) return std::nullopt;
            done_ = true;
            return std::vector<Value>{};
        }
        for (;;) {
            if (done_) return std::nullopt;
            if (!in_band_) {
                if (height_ > max_height_) {
                    done_ = true;
                    return std::nullopt;
                }
                std::vector<Value> band = pool_(height_);
                band_start_ = cumulative_.size();
                cumulative_.insert(cumulative_.end(), band.begin(), band.end());
                odometer_.assign(arity_, 0);
                fresh_ = true;
                in_band_ = true;
            }
            while (advance()) {
                for (size_t i : odometer_) {
                    if (i >= band_start_) {
                        std::vector<Value> out;
                        out.reserve(arity_);
                        for (size_t j : odometer_) out.push_back(cumulative_[j]);
                        return out;
                    }
                }
            }
            in_band_ = false;
            ++height_;
        }
    }

private:
    bool advance() {
        if (fresh_) {
            fresh_ = false;
            return band_start_ < cumulative_.size();
        }
        for (size_t pos = arity_; pos-- > 0;) {
            if (++odometer_[pos] < cumulative_.size()) return true;
            odometer_[pos] = 0;
        }
        return false;
    }

    size_t arity_;
    unsigned max_height_;
    Pool pool_;
    unsigned height_ = 1;
    bool in_band_ = false;
    bool fresh_ = false;
    bool done_ = false;
    std::vector<Value> cumulative_;
    size_t band_start_ = 0;
    std::vector<size_t> odometer_;
};

using RationalTupleEnumerator = TupleEnumerator<mpq_class>;
using GaussianTupleEnumerator = TupleEnumerator<GaussianRational>;

RationalTupleEnumerator rational_tuples(size_t arity, unsigned max_height);
GaussianTupleEnumerator gaussian_tuples(size_t arity, unsigned max_height);

}  // namespace expzero
