#pragma once

#include <variant>

#include "expzero/zerofree.hpp"

namespace expzero {

struct Rectangle {
    DyadicInterval re, im;  // positive area, dyadic corners
};

// Winding of f around 0 along the rectangle boundary (counterclockwise
// bottom, right, top, left), or nullopt when zero cannot be excluded on some
// boundary segment within the subdivision budget. The boundary is subdivided
// adaptively; winding is accumulated as quarter turns between zero-free
// half-plane enclosures, so no transcendental argument computation is
// involved. A return w >= 1 certifies w zeros inside, with multiplicity.
std::optional<int> winding_number(const Term& f, const std::string& var, const Rectangle& rect,
                                  long bits, unsigned max_segments = 2048);

struct ExactRationalZero {
    std::vector<GaussianRational> zero;  // aligned with y_vars
};

struct WindingZero {
    std::map<std::string, GaussianRational> fixed;  // all y vars except free_var
    std::string free_var;
    Rectangle rect;
    int winding;
    long bits;
};

struct HasZeroCertificate {
    Term p;
    std::vector<std::string> x_vars;
    std::vector<GaussianRational> point;
    std::vector<std::string> y_vars;
    std::variant<ExactRationalZero, WindingZero> evidence;
};

// Expanding dyadic grid of candidate rectangles: unit squares over centers
// spiraling outward without bound, dovetailed (by a ruler sequence) with
// half-size refinements over denser centers. Level 0 receives every other
// attempt, level 1 every fourth, and so on.
class GridWalker {
public:
    struct Attempt {
        Rectangle rect;
        unsigned level;
    };
    std::optional<Attempt> next();

    static constexpr unsigned kMaxLevel = 12;

private:
    struct LevelState {
        long ring = 0;
        size_t cell = 0;
        std::vector<std::pair<long, long>> cells;
        bool primed = false;
    };
    Attempt emit(unsigned level);
    unsigned long step_ = 0;
    std::vector<LevelState> levels_;
};

// Stepwise dovetail of (a) exact Gaussian-rational zeros in ascending height
// and (b) winding certification over rational slices, for the driver loop.
class ZeroSearch {
public:
    ZeroSearch(Term p, std::vector<std::string> x_vars, std::vector<GaussianRational> point,
               std::vector<std::string> y_vars, SearchBudget budget);

    bool step();
    bool exhausted() const { return exhausted_; }
    const std::optional<HasZeroCertificate>& result() const { return result_; }
    const std::string& exhaust_reason() const { return exhaust_reason_; }

    static constexpr unsigned kExactBatch = 16;

private:
    struct Slice {
        std::map<std::string, GaussianRational> fixed;
        std::string free_var;
        Term f;
        GridWalker walker;
        bool dead = false;
    };

    bool spawn_slice();
    void exact_quantum();
    void winding_quantum();
    void update_exhausted();

    Term p_;
    std::vector<std::string> x_vars_;
    std::vector<GaussianRational> point_;
    std::vector<std::string> y_vars_;
    SearchBudget budget_;
    std::map<std::string, GaussianRational> a_binding_;
    GaussianTupleEnumerator exact_tuples_;
    bool exact_done_ = false;
    GaussianTupleEnumerator fixed_tuples_;
    std::vector<std::vector<GaussianRational>> fixed_cache_;
    bool fixed_done_ = false;
    size_t slice_counter_ = 0;
    std::vector<Slice> slices_;
    unsigned winding_attempts_ = 0;
    unsigned winding_steps_ = 0;
    bool winding_done_ = false;
    bool phase_exact_ = true;
    std::optional<HasZeroCertificate> result_;
    bool exhausted_ = false;
    std::string exhaust_reason_;
};

// First zero evidence for a one-variable term: exact rational zeros dovetailed
// with winding rectangles.
std::optional<HasZeroCertificate> find_zero_1d(const Term& f, const SearchBudget& budget);

std::optional<HasZeroCertificate> search_zero(const Term& p,
                                              const std::vector<std::string>& x_vars,
                                              const std::vector<GaussianRational>& point,
                                              const std::vector<std::string>& y_vars,
                                              const SearchBudget& budget);

bool verify_haszero(const HasZeroCertificate& cert, const SearchBudget& budget,
                    std::string* why = nullptr);

}  // namespace expzero
