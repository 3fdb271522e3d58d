#include "expzero/certificate.hpp"

#include <sstream>

namespace expzero {

namespace {

std::string join_names(const std::vector<std::string>& names) {
    if (names.empty()) return "-";
    std::string out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i];
    }
    return out;
}

std::string named_gaussians(const std::vector<std::string>& names,
                            const std::vector<GaussianRational>& values) {
    if (names.empty()) return "-";
    std::string out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i] + "=" + values[i].str();
    }
    return out;
}

std::string named_rationals(const std::vector<std::string>& names,
                            const std::vector<mpq_class>& values) {
    if (names.empty()) return "-";
    std::string out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i] + "=" + values[i].get_str();
    }
    return out;
}

std::string named_gaussian_map(const std::map<std::string, GaussianRational>& values) {
    if (values.empty()) return "-";
    std::string out;
    bool first = true;
    for (const auto& [name, v] : values) {
        if (!first) out += ',';
        out += name + "=" + v.str();
        first = false;
    }
    return out;
}

std::string constant_str(const ExpConstant& c) { return print(to_term(c)); }

void split_names(const std::string& text, std::vector<std::string>& out) {
    if (text == "-") return;
    size_t pos = 0;
    while (pos != std::string::npos) {
        size_t comma = text.find(',', pos);
        out.push_back(text.substr(pos, comma == std::string::npos ? comma : comma - pos));
        pos = comma == std::string::npos ? comma : comma + 1;
    }
}

void split_named_values(const std::string& text, std::vector<std::string>& names,
                        std::vector<std::string>& values) {
    if (text == "-") return;
    std::vector<std::string> chunks;
    split_names(text, chunks);
    for (const auto& chunk : chunks) {
        size_t eq = chunk.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected name=value: " + chunk);
        names.push_back(chunk.substr(0, eq));
        values.push_back(chunk.substr(eq + 1));
    }
}

struct KeyValues {
    std::string verdict;
    std::vector<std::pair<std::string, std::string>> entries;

    const std::string& get(const std::string& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return v;
        throw std::invalid_argument("missing certificate field: " + key);
    }
    std::vector<std::string> get_all(const std::string& key) const {
        std::vector<std::string> out;
        for (const auto& [k, v] : entries)
            if (k == key) out.push_back(v);
        return out;
    }
};

KeyValues parse_block(const std::string& text) {
    KeyValues out;
    std::istringstream is(text);
    std::string line;
    bool saw_verdict = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (!saw_verdict) {
            if (line.rfind("VERDICT ", 0) != 0)
                throw std::invalid_argument("certificate must start with a VERDICT line");
            out.verdict = line.substr(8);
            saw_verdict = true;
            continue;
        }
        if (line.rfind("  ", 0) != 0)
            throw std::invalid_argument("certificate lines must be indented: " + line);
        std::string body = line.substr(2);
        size_t space = body.find(' ');
        if (space == std::string::npos)
            throw std::invalid_argument("expected 'key value': " + line);
        out.entries.emplace_back(body.substr(0, space), body.substr(space + 1));
    }
    if (!saw_verdict) throw std::invalid_argument("empty certificate");
    return out;
}

void render_common(std::ostringstream& os, const Term& p, const std::vector<std::string>& x_vars,
                   const std::vector<GaussianRational>& point,
                   const std::vector<std::string>& y_vars) {
    os << "  P " << print(p) << "\n";
    os << "  x " << join_names(x_vars) << "\n";
    os << "  y " << join_names(y_vars) << "\n";
    os << "  at " << named_gaussians(x_vars, point) << "\n";
}

struct Common {
    Term p;
    std::vector<std::string> x_vars, y_vars;
    std::vector<GaussianRational> point;
};

Common parse_common(const KeyValues& kv) {
    Common c;
    c.p = parse(kv.get("P"));
    split_names(kv.get("x"), c.x_vars);
    split_names(kv.get("y"), c.y_vars);
    std::vector<std::string> names, values;
    split_named_values(kv.get("at"), names, values);
    if (names != c.x_vars) throw std::invalid_argument("point does not match the x variables");
    for (const auto& v : values) c.point.push_back(GaussianRational::parse(v));
    return c;
}

std::vector<mpq_class> parse_rational_tuple(const std::string& text,
                                            const std::vector<std::string>& y_vars) {
    std::vector<std::string> names, values;
    split_named_values(text, names, values);
    if (names != y_vars) throw std::invalid_argument("tuple does not match the y variables");
    std::vector<mpq_class> out;
    for (const auto& v : values) {
        mpq_class q;
        if (q.set_str(v, 10) != 0) throw std::invalid_argument("bad rational: " + v);
        q.canonicalize();
        out.push_back(std::move(q));
    }
    return out;
}

DyadicInterval parse_dyadic_interval(const std::string& text) {
    size_t space = text.find(' ');
    if (space == std::string::npos) throw std::invalid_argument("expected two endpoints: " + text);
    mpq_class lo, hi;
    if (lo.set_str(text.substr(0, space), 10) != 0 || hi.set_str(text.substr(space + 1), 10) != 0)
        throw std::invalid_argument("bad endpoints: " + text);
    lo.canonicalize();
    hi.canonicalize();
    return {Dyadic::from_mpq_exact(lo), Dyadic::from_mpq_exact(hi)};
}

}  // namespace

std::string render_verdict(const Verdict& verdict, const Term& p,
                           const std::vector<std::string>& x_vars,
                           const std::vector<GaussianRational>& point,
                           const std::vector<std::string>& y_vars, const SearchBudget& budget) {
    std::ostringstream os;
    switch (verdict.kind) {
        case VerdictKind::NotIn: {
            const ZeroFreeCertificate& cert = *verdict.zero_free;
            os << "VERDICT NOT_IN\n";
            os << "  kind zero_free\n";
            render_common(os, cert.p, cert.x_vars, cert.point, cert.y_vars);
            os << "  Q " << print(cert.q) << "\n";
            os << "  witness " << named_rationals(cert.y_vars, cert.witness.point) << "\n";
            os << "  witness_value " << constant_str(cert.witness.value) << "\n";
            os << "  witness_bits " << cert.witness.bits << "\n";
            os << "  c_num " << constant_str(cert.c_numerator) << "\n";
            os << "  c_exp " << constant_str(cert.c_exponent) << "\n";
            for (const auto& check : cert.checkpoints)
                os << "  check " << named_rationals(cert.y_vars, check.point) << " value "
                   << constant_str(check.value) << "\n";
            break;
        }
        case VerdictKind::In: {
            const HasZeroCertificate& cert = *verdict.has_zero;
            os << "VERDICT IN\n";
            if (const auto* exact = std::get_if<ExactRationalZero>(&cert.evidence)) {
                os << "  kind exact_zero\n";
                render_common(os, cert.p, cert.x_vars, cert.point, cert.y_vars);
                os << "  zero " << named_gaussians(cert.y_vars, exact->zero) << "\n";
            } else {
                const auto& wz = std::get<WindingZero>(cert.evidence);
                os << "  kind winding_zero\n";
                render_common(os, cert.p, cert.x_vars, cert.point, cert.y_vars);
                os << "  fixed " << named_gaussian_map(wz.fixed) << "\n";
                os << "  free " << wz.free_var << "\n";
                os << "  rect_re " << wz.rect.re.lo().str() << " " << wz.rect.re.hi().str() << "\n";
                os << "  rect_im " << wz.rect.im.lo().str() << " " << wz.rect.im.hi().str() << "\n";
                os << "  winding " << wz.winding << "\n";
                os << "  bits " << wz.bits << "\n";
            }
            break;
        }
        case VerdictKind::InIdenticallyZero:
            os << "VERDICT IN_IDENTICALLY_ZERO\n";
            os << "  kind identically_zero\n";
            render_common(os, p, x_vars, point, y_vars);
            break;
        case VerdictKind::Unknown:
            os << "VERDICT UNKNOWN\n";
            os << "  kind budget_exhausted\n";
            render_common(os, p, x_vars, point, y_vars);
            os << "  report " << verdict.budget_report << "\n";
            os << "  max_weight " << budget.max_weight << "\n";
            os << "  max_height " << budget.max_height << "\n";
            os << "  bits " << budget.max_bits << "\n";
            break;
    }
    return os.str();
}

bool verify_certificate(const std::string& text, const SearchBudget& budget, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    try {
        KeyValues kv = parse_block(text);
        if (kv.verdict == "UNKNOWN") return fail("UNKNOWN carries no certificate to replay");
        Common common = parse_common(kv);
        if (kv.verdict == "IN_IDENTICALLY_ZERO") {
            if (kv.get("kind") != "identically_zero") return fail("kind mismatch");
            if (!check_identically_zero(common.p, common.x_vars, common.point, common.y_vars))
                return fail("P is not identically zero at the point");
            return true;
        }
        if (kv.verdict == "NOT_IN") {
            if (kv.get("kind") != "zero_free") return fail("kind mismatch");
            ZeroFreeCertificate cert;
            cert.p = common.p;
            cert.x_vars = common.x_vars;
            cert.point = common.point;
            cert.y_vars = common.y_vars;
            cert.q = parse(kv.get("Q"));
            cert.witness.point = parse_rational_tuple(kv.get("witness"), cert.y_vars);
            cert.witness.value = eval_exact(parse(kv.get("witness_value")), {});
            cert.witness.bits = std::stol(kv.get("witness_bits"));
            cert.c_numerator = eval_exact(parse(kv.get("c_num")), {});
            cert.c_exponent = eval_exact(parse(kv.get("c_exp")), {});
            for (const auto& line : kv.get_all("check")) {
                size_t marker = line.find(" value ");
                if (marker == std::string::npos) return fail("malformed check line");
                IdentityCheckpoint check;
                check.point = parse_rational_tuple(line.substr(0, marker), cert.y_vars);
                check.value = eval_exact(parse(line.substr(marker + 7)), {});
                cert.checkpoints.push_back(std::move(check));
            }
            return verify_zerofree(cert, budget, why);
        }
        if (kv.verdict == "IN") {
            HasZeroCertificate cert;
            cert.p = common.p;
            cert.x_vars = common.x_vars;
            cert.point = common.point;
            cert.y_vars = common.y_vars;
            std::string kind = kv.get("kind");
            if (kind == "exact_zero") {
                std::vector<std::string> names, values;
                split_named_values(kv.get("zero"), names, values);
                if (names != cert.y_vars) return fail("zero tuple does not match y variables");
                ExactRationalZero exact;
                for (const auto& v : values) exact.zero.push_back(GaussianRational::parse(v));
                cert.evidence = std::move(exact);
            } else if (kind == "winding_zero") {
                WindingZero wz;
                std::vector<std::string> names, values;
                split_named_values(kv.get("fixed"), names, values);
                for (size_t i = 0; i < names.size(); ++i)
                    wz.fixed.emplace(names[i], GaussianRational::parse(values[i]));
                wz.free_var = kv.get("free");
                wz.rect.re = parse_dyadic_interval(kv.get("rect_re"));
                wz.rect.im = parse_dyadic_interval(kv.get("rect_im"));
                wz.winding = std::stoi(kv.get("winding"));
                wz.bits = std::stol(kv.get("bits"));
                cert.evidence = std::move(wz);
            } else {
                return fail("unknown IN certificate kind: " + kind);
            }
            return verify_haszero(cert, budget, why);
        }
        return fail("unknown verdict: " + kv.verdict);
    } catch (const std::exception& e) {
        return fail(std::string("parse error: ") + e.what());
    }
}

}  // namespace expzero
