#include "expzero/rootcert.hpp"

#include <algorithm>
#include <bit>
#include <list>

namespace expzero {

namespace {

// One boundary piece: a degenerate-height box along an edge, in walk order.
// Edges: 0 bottom (re increasing), 1 right (im increasing), 2 top (re
// decreasing), 3 left (im decreasing).
struct Segment {
    DyadicInterval re, im;
    int edge;
    ComplexInterval image;
    bool ready = false;
};

std::pair<Segment, Segment> split_segment(const Segment& s) {
    Segment first = s, second = s;
    first.ready = second.ready = false;
    if (s.edge == 0 || s.edge == 2) {
        Dyadic mid = s.re.midpoint();
        first.re = DyadicInterval(s.re.lo(), mid);
        second.re = DyadicInterval(mid, s.re.hi());
        if (s.edge == 2) std::swap(first, second);
    } else {
        Dyadic mid = s.im.midpoint();
        first.im = DyadicInterval(s.im.lo(), mid);
        second.im = DyadicInterval(mid, s.im.hi());
        if (s.edge == 3) std::swap(first, second);
    }
    return {first, second};
}

// Open half-planes containing the zero-excluding rectangle:
// 0: Re>0, 1: Im>0, 2: Re<0, 3: Im<0 (as a bitmask).
unsigned label_set(const ComplexInterval& image) {
    unsigned mask = 0;
    if (image.re().lo().sign() > 0) mask |= 1u << 0;
    if (image.im().lo().sign() > 0) mask |= 1u << 1;
    if (image.re().hi().sign() < 0) mask |= 1u << 2;
    if (image.im().hi().sign() < 0) mask |= 1u << 3;
    return mask;
}

// Difference of half-plane indices as quarter turns in {-1, 0, 1, 2}.
int wrap_quarter(int d) { return ((d + 1) % 4 + 4) % 4 - 1; }

}  // namespace

std::optional<int> winding_number(const Term& f, const std::string& var, const Rectangle& rect,
                                  long bits, unsigned max_segments) {
    if (!(rect.re.lo() < rect.re.hi()) || !(rect.im.lo() < rect.im.hi()))
        throw std::invalid_argument("degenerate rectangle");
    auto fv = free_vars(f);
    if (fv.size() != 1 || !fv.count(var))
        throw std::invalid_argument("winding_number expects exactly one free variable");

    std::list<Segment> segs;
    segs.push_back({rect.re, DyadicInterval::point(rect.im.lo()), 0, {}, false});
    segs.push_back({DyadicInterval::point(rect.re.hi()), rect.im, 1, {}, false});
    segs.push_back({rect.re, DyadicInterval::point(rect.im.hi()), 2, {}, false});
    segs.push_back({DyadicInterval::point(rect.re.lo()), rect.im, 3, {}, false});

    auto ensure_image = [&](Segment& s) {
        if (!s.ready) {
            std::map<std::string, ComplexInterval> env{{var, ComplexInterval(s.re, s.im)}};
            s.image = eval_enclosure(f, env, bits);
            s.ready = true;
        }
    };
    auto split_at = [&](std::list<Segment>::iterator it) {
        auto [a, b] = split_segment(*it);
        it = segs.erase(it);
        it = segs.insert(it, b);
        return segs.insert(it, a);  // points at the first half
    };
    // Subdivides until every piece's image excludes zero; false on budget.
    auto exclude_zero = [&]() {
        for (auto it = segs.begin(); it != segs.end();) {
            ensure_image(*it);
            if (it->image.contains_zero()) {
                if (segs.size() + 1 > max_segments) return false;
                it = split_at(it);
            } else {
                ++it;
            }
        }
        return true;
    };

    // Assign half-plane labels; repair opposite-plane adjacencies by further
    // subdivision. Any valid labeling yields the same total.
    for (;;) {
        if (!exclude_zero()) return std::nullopt;
        std::vector<std::list<Segment>::iterator> order;
        for (auto it = segs.begin(); it != segs.end(); ++it) order.push_back(it);
        size_t n = order.size();
        std::vector<int> labels(n, -1);
        unsigned first_mask = label_set(order[0]->image);
        for (int b = 0; b < 4; ++b)
            if (first_mask & (1u << b)) {
                labels[0] = b;
                break;
            }
        size_t conflict = 0;  // j of the first bad (j-1, j mod n) pair, else 0
        for (size_t j = 1; j <= n; ++j) {
            unsigned mask = j == n ? (1u << labels[0]) : label_set(order[j]->image);
            int best = -1, best_abs = 3;
            for (int b = 0; b < 4; ++b) {
                if (!(mask & (1u << b))) continue;
                int d = std::abs(wrap_quarter(b - labels[j - 1]));
                if (d < best_abs) {
                    best_abs = d;
                    best = b;
                }
            }
            if (best_abs >= 2) {
                conflict = j;
                break;
            }
            if (j < n) labels[j] = best;
        }
        if (conflict == 0) {
            int total = 0;
            for (size_t j = 0; j < n; ++j) total += wrap_quarter(labels[(j + 1) % n] - labels[j]);
            if (total % 4 != 0) throw std::logic_error("winding total not a multiple of 4");
            int w = total / 4;
            if (w < 0) throw std::logic_error("negative winding for an analytic function");
            return w;
        }
        if (segs.size() + 2 > max_segments) return std::nullopt;
        split_at(order[conflict % n]);
        split_at(order[conflict - 1]);
    }
}

// ---------------------------------------------------------------------------
// GridWalker
// ---------------------------------------------------------------------------

namespace {

// Cells of the Chebyshev ring at the given radius, top rows first.
std::vector<std::pair<long, long>> ring_cells(long ring) {
    std::vector<std::pair<long, long>> cells;
    if (ring == 0) {
        cells.emplace_back(0, 0);
        return cells;
    }
    for (long b = ring; b >= -ring; --b)
        for (long a = -ring; a <= ring; ++a)
            if (std::max(std::labs(a), std::labs(b)) == ring) cells.emplace_back(a, b);
    return cells;
}

}  // namespace

GridWalker::Attempt GridWalker::emit(unsigned level) {
    if (levels_.size() <= level) levels_.resize(level + 1);
    LevelState& st = levels_[level];
    if (!st.primed || st.cell >= st.cells.size()) {
        if (st.primed) ++st.ring;
        st.cells = ring_cells(st.ring);
        st.cell = 0;
        st.primed = true;
    }
    auto [a, b] = st.cells[st.cell++];
    long scale = -static_cast<long>(level) - 1;
    Rectangle rect{DyadicInterval(Dyadic(2 * a - 1, scale), Dyadic(2 * a + 1, scale)),
                   DyadicInterval(Dyadic(2 * b - 1, scale), Dyadic(2 * b + 1, scale))};
    return Attempt{std::move(rect), level};
}

std::optional<GridWalker::Attempt> GridWalker::next() {
    unsigned level = std::min<unsigned>(std::countr_zero(step_ + 1), kMaxLevel);
    ++step_;
    return emit(level);
}

// ---------------------------------------------------------------------------
// ZeroSearch
// ---------------------------------------------------------------------------

ZeroSearch::ZeroSearch(Term p, std::vector<std::string> x_vars,
                       std::vector<GaussianRational> point, std::vector<std::string> y_vars,
                       SearchBudget budget)
    : p_(std::move(p)),
      x_vars_(std::move(x_vars)),
      point_(std::move(point)),
      y_vars_(std::move(y_vars)),
      budget_(budget),
      exact_tuples_(gaussian_tuples(y_vars_.size(), budget_.max_height)),
      fixed_tuples_(gaussian_tuples(y_vars_.empty() ? 0 : y_vars_.size() - 1,
                                    budget_.max_height)) {
    validate_roles(p_, x_vars_, point_, y_vars_);
    a_binding_ = bind_point(x_vars_, point_);
    if (y_vars_.empty()) {
        // No existential variables: the value either is zero or is not.
        if (eval_exact(p_, a_binding_).is_zero())
            result_ = HasZeroCertificate{p_, x_vars_, point_, y_vars_, ExactRationalZero{{}}};
        exact_done_ = true;
        winding_done_ = true;
        update_exhausted();
    }
}

bool ZeroSearch::spawn_slice() {
    if (fixed_done_ && slice_counter_ / y_vars_.size() >= fixed_cache_.size()) return false;
    size_t m = y_vars_.size();
    size_t tuple_index = slice_counter_ / m;
    while (!fixed_done_ && tuple_index >= fixed_cache_.size()) {
        auto t = fixed_tuples_.next();
        if (!t) {
            fixed_done_ = true;
            break;
        }
        fixed_cache_.push_back(std::move(*t));
    }
    if (tuple_index >= fixed_cache_.size()) return false;
    size_t free_idx = m - 1 - (slice_counter_ % m);
    ++slice_counter_;

    Slice slice;
    slice.free_var = y_vars_[free_idx];
    const auto& tuple = fixed_cache_[tuple_index];
    size_t k = 0;
    for (size_t i = 0; i < m; ++i) {
        if (i == free_idx) continue;
        slice.fixed.emplace(y_vars_[i], tuple[k++]);
    }
    auto binding = a_binding_;
    for (const auto& [name, v] : slice.fixed) binding.emplace(name, v);
    slice.f = substitute(p_, binding);
    if (free_vars(slice.f) != std::set<std::string>{slice.free_var}) slice.dead = true;
    slices_.push_back(std::move(slice));
    return true;
}

void ZeroSearch::exact_quantum() {
    for (unsigned i = 0; i < kExactBatch && !exact_done_; ++i) {
        auto tuple = exact_tuples_.next();
        if (!tuple) {
            exact_done_ = true;
            break;
        }
        auto binding = a_binding_;
        for (size_t j = 0; j < y_vars_.size(); ++j) binding.emplace(y_vars_[j], (*tuple)[j]);
        if (eval_exact(p_, binding).is_zero()) {
            result_ = HasZeroCertificate{p_, x_vars_, point_, y_vars_,
                                         ExactRationalZero{std::move(*tuple)}};
            return;
        }
    }
}

void ZeroSearch::winding_quantum() {
    if (winding_attempts_ >= budget_.max_winding_attempts) {
        winding_done_ = true;
        return;
    }
    // Ruler-sequence schedule: slice 0 gets every other quantum, slice 1
    // every fourth, and so on, so early slices are never starved while the
    // slice list keeps growing.
    size_t want = std::countr_zero(winding_steps_ + 1);
    ++winding_steps_;
    while (slices_.size() <= want) {
        if (!spawn_slice()) break;
    }
    if (slices_.empty()) {
        winding_done_ = true;
        return;
    }
    size_t n = slices_.size();
    size_t idx = want % n;
    for (size_t probe = 0; probe < n; ++probe, idx = (idx + 1) % n) {
        Slice& slice = slices_[idx];
        if (slice.dead) continue;
        auto attempt = slice.walker.next();
        if (!attempt) {
            slice.dead = true;
            continue;
        }
        ++winding_attempts_;
        long bits = std::min(64L << std::min(attempt->level, 3u), std::max(64L, budget_.max_bits));
        std::optional<int> w;
        try {
            w = winding_number(slice.f, slice.free_var, attempt->rect, bits,
                               budget_.max_segments);
        } catch (const EnclosureOverflow&) {
            // The slice blows past the representable exponent range on this
            // rectangle; treat the attempt as inconclusive.
        }
        if (w && *w >= 1) {
            result_ = HasZeroCertificate{
                p_, x_vars_, point_, y_vars_,
                WindingZero{slice.fixed, slice.free_var, attempt->rect, *w, bits}};
        }
        return;
    }
    // Every current slice is dead; try to bring up a fresh one.
    if (!spawn_slice()) winding_done_ = true;
}

void ZeroSearch::update_exhausted() {
    if (result_) return;
    if (exact_done_ && winding_done_) {
        exhausted_ = true;
        exhaust_reason_ = "exact-height,winding-attempts";
    }
}

bool ZeroSearch::step() {
    if (exhausted_ || result_) return false;
    if (phase_exact_ && !exact_done_)
        exact_quantum();
    else if (!winding_done_)
        winding_quantum();
    phase_exact_ = !phase_exact_;
    update_exhausted();
    return !exhausted_ && !result_;
}

std::optional<HasZeroCertificate> find_zero_1d(const Term& f, const SearchBudget& budget) {
    auto fv = free_vars(f);
    if (fv.size() != 1) throw std::invalid_argument("find_zero_1d expects one free variable");
    std::string var = *fv.begin();
    return search_zero(f, {}, {}, {var}, budget);
}

std::optional<HasZeroCertificate> search_zero(const Term& p,
                                              const std::vector<std::string>& x_vars,
                                              const std::vector<GaussianRational>& point,
                                              const std::vector<std::string>& y_vars,
                                              const SearchBudget& budget) {
    ZeroSearch search(p, x_vars, point, y_vars, budget);
    while (search.step()) {
    }
    return search.result();
}

bool verify_haszero(const HasZeroCertificate& cert, const SearchBudget& budget, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    try {
        validate_roles(cert.p, cert.x_vars, cert.point, cert.y_vars);
        auto binding = bind_point(cert.x_vars, cert.point);
        if (const auto* exact = std::get_if<ExactRationalZero>(&cert.evidence)) {
            if (exact->zero.size() != cert.y_vars.size()) return fail("zero arity mismatch");
            for (size_t i = 0; i < cert.y_vars.size(); ++i)
                binding.emplace(cert.y_vars[i], exact->zero[i]);
            if (!eval_exact(cert.p, binding).is_zero())
                return fail("claimed exact zero does not evaluate to zero");
            return true;
        }
        const auto& wz = std::get<WindingZero>(cert.evidence);
        if (wz.winding < 1) return fail("winding below one certifies nothing");
        std::set<std::string> ys(cert.y_vars.begin(), cert.y_vars.end());
        if (!ys.count(wz.free_var)) return fail("free variable is not a y variable");
        for (const auto& [name, v] : wz.fixed) {
            if (!ys.count(name) || name == wz.free_var) return fail("bad fixed variable");
            binding.emplace(name, v);
        }
        Term f = substitute(cert.p, binding);
        if (free_vars(f) != std::set<std::string>{wz.free_var})
            return fail("slice does not leave exactly the free variable");
        auto w = winding_number(f, wz.free_var, wz.rect, wz.bits, budget.max_segments);
        if (!w) return fail("winding could not be recomputed at the stated precision");
        if (*w != wz.winding) return fail("winding mismatch");
        return true;
    } catch (const std::exception& e) {
        return fail(std::string("replay error: ") + e.what());
    }
}

}  // namespace expzero
