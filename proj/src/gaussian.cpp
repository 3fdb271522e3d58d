#include "expzero/gaussian.hpp"

#include <ostream>
#include <stdexcept>

namespace expzero {

namespace {

std::string rat_str(const mpq_class& q) { return q.get_str(); }

// Parses a (possibly signed) rational starting at pos; advances pos.
mpq_class parse_rat(const std::string& s, size_t& pos) {
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negative = s[pos] == '-';
        ++pos;
    }
    size_t start = pos;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("bad rational: " + s);
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        size_t den = pos;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == den) throw std::invalid_argument("bad rational: " + s);
    }
    mpq_class q;
    if (q.set_str(s.substr(start, pos - start), 10) != 0)
        throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

}  // namespace

std::string GaussianRational::str() const {
    if (im_ == 0) return rat_str(re_);
    std::string imag = rat_str(mpq_class(abs(im_))) + "i";
    if (re_ == 0) return (im_ < 0 ? "-" : "") + imag;
    return rat_str(re_) + (im_ < 0 ? "-" : "+") + imag;
}

GaussianRational GaussianRational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty constant");
    if (text == "i") return {0, 1};
    if (text == "-i") return {0, -1};
    if (text == "+i") return {0, 1};
    size_t pos = 0;
    mpq_class first = parse_rat(text, pos);
    if (pos == text.size()) return {first};
    if (text[pos] == 'i' && pos + 1 == text.size()) return {0, first};
    if (text[pos] == '+' || text[pos] == '-') {
        if (text.substr(pos) == "+i") return {first, 1};
        if (text.substr(pos) == "-i") return {first, -1};
        mpq_class second = parse_rat(text, pos);
        if (pos + 1 == text.size() && text[pos] == 'i') return {first, second};
    }
    throw std::invalid_argument("bad Gaussian rational: " + text);
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

mpq_class make_rational(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace expzero
