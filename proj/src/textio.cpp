#include "onepoint/textio.hpp"

#include <cctype>
#include <sstream>

namespace onepoint {

namespace {

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Recursive-descent parser over the grammar
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := '(' expr ')' | 'z'<digit> | 't' | 'a' | integer
class PolyParser {
  public:
    PolyParser(std::string_view s, FieldPtr f, int nvars, VarMode mode)
        : s_(s), f_(std::move(f)), nvars_(nvars), mode_(mode) {}

    MPoly run() {
        MPoly r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return r;
    }

  private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    MPoly expr() {
        bool neg = false;
        if (eat('-')) neg = true;
        MPoly acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                break;
        }
        return acc;
    }

    MPoly term() {
        MPoly acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    MPoly factor() {
        MPoly base = atom();
        if (eat('^')) {
            const uint64_t e = integer();
            base = base.pow(e);
        }
        return base;
    }

    uint64_t integer() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
        uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + uint64_t(s_[pos_] - '0');
            if (v > (uint64_t(1) << 40)) fail("integer too large");
            ++pos_;
        }
        return v;
    }

    MPoly atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MPoly inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == 'a') {
            ++pos_;
            if (f_->k() < 2) fail("generator 'a' needs an extension field");
            return MPoly::constant(f_, nvars_, element_at(f_, f_->p()));  // the generator itself
        }
        if (mode_ == VarMode::Z && c == 'z') {
            ++pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected variable index");
            const int idx = s_[pos_] - '0';
            ++pos_;
            if (idx >= nvars_) fail("variable z" + std::to_string(idx) + " out of range");
            return MPoly::variable(f_, nvars_, idx);
        }
        if (mode_ == VarMode::T && c == 't') {
            ++pos_;
            return MPoly::variable(f_, nvars_, 0);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const uint64_t v = integer();
            return MPoly::constant(f_, nvars_, Fq::from_int(f_, int64_t(v % uint64_t(f_->p()))));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    size_t pos_ = 0;
    FieldPtr f_;
    int nvars_;
    VarMode mode_;
};

// True when the element lies in the prime field, so it can be printed as a
// bare integer.
bool is_prime_field_value(const Fq& a) {
    const auto& c = a.coeffs();
    for (size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) return false;
    return true;
}

void append_monomial(std::string& out, const Monomial& m, VarMode mode, bool leading_coeff_present) {
    bool first = !leading_coeff_present;
    for (size_t v = 0; v < m.e.size(); ++v) {
        if (m.e[v] == 0) continue;
        if (!first) out += '*';
        first = false;
        if (mode == VarMode::T)
            out += 't';
        else
            out += "z" + std::to_string(v);
        if (m.e[v] > 1) out += "^" + std::to_string(m.e[v]);
    }
}

}  // namespace

FieldPtr parse_field_spec(std::string_view in) {
    std::string_view s = trimmed(in);
    std::string spec(s);
    std::string mod_part;
    if (const auto semi = spec.find(';'); semi != std::string::npos) {
        mod_part = spec.substr(semi + 1);
        spec = spec.substr(0, semi);
    }
    int64_t p = 0;
    int k = 1;
    const auto caret = spec.find('^');
    try {
        if (caret == std::string::npos) {
            p = std::stoll(spec);
        } else {
            p = std::stoll(spec.substr(0, caret));
            k = std::stoi(spec.substr(caret + 1));
        }
    } catch (const std::exception&) {
        throw ParseError("bad field spec '" + std::string(in) + "'");
    }
    if (mod_part.empty()) return FieldConfig::make(p, k);

    if (mod_part.rfind("mod=", 0) != 0) throw ParseError("field spec options must be ';mod=<poly>'");
    // The modulus is a polynomial in t over the prime field.
    const FieldPtr fp = FieldConfig::make(p, 1);
    const MPoly mp = parse_poly(mod_part.substr(4), fp, 1, VarMode::T);
    const UPolyView v = up_view(mp, 0);
    std::vector<int64_t> mod;
    mod.reserve(v.coeffs.size());
    for (const MPoly& c : v.coeffs) mod.push_back(c.constant_value().index());
    return FieldConfig::make(p, k, mod);
}

std::string field_spec_string(const FieldConfig& f) {
    if (f.k() == 1) return std::to_string(f.p());
    std::string out = std::to_string(f.p()) + "^" + std::to_string(f.k()) + ";mod=";
    bool first = true;
    for (int i = f.k(); i >= 0; --i) {
        const int64_t c = f.modulus()[size_t(i)];
        if (c == 0) continue;
        if (!first) out += '+';
        first = false;
        if (i == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c) + "*";
            out += (i == 1) ? "t" : "t^" + std::to_string(i);
        }
    }
    return out;
}

Fq parse_element(std::string_view s, const FieldPtr& f) {
    const MPoly p = PolyParser(s, f, 0, VarMode::Z).run();
    return p.constant_value();
}

std::string element_string(const Fq& a) {
    const auto& c = a.coeffs();
    std::string out;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += '+';
        if (i == 0) {
            out += std::to_string(c[i]);
        } else {
            if (c[i] != 1) out += std::to_string(c[i]) + "*";
            out += (i == 1) ? "a" : "a^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

MPoly parse_poly(std::string_view s, const FieldPtr& f, int nvars, VarMode mode) {
    return PolyParser(s, f, nvars, mode).run();
}

std::string poly_string(const MPoly& f, VarMode mode) {
    if (f.is_zero()) return "0";
    std::string out;
    // grlex-descending term order: reverse map iteration.
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        if (!out.empty()) out += " + ";
        const bool has_vars = m.total() > 0;
        if (!has_vars) {
            out += is_prime_field_value(c) ? element_string(c) : "(" + element_string(c) + ")";
            continue;
        }
        bool coeff_printed = false;
        if (!c.is_one()) {
            if (is_prime_field_value(c))
                out += element_string(c);
            else
                out += "(" + element_string(c) + ")";
            coeff_printed = true;
        }
        if (coeff_printed) out += "*";
        append_monomial(out, m, mode, false);
    }
    return out;
}

std::vector<Fq> parse_point(std::string_view in, const FieldPtr& f) {
    std::string_view s = trimmed(in);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError("point must be '(e : e : ...)'");
    s = s.substr(1, s.size() - 2);
    std::vector<Fq> out;
    size_t start = 0;
    while (true) {
        const size_t colon = s.find(':', start);
        const std::string_view piece = colon == std::string_view::npos ? s.substr(start) : s.substr(start, colon - start);
        out.push_back(parse_element(piece, f));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    return out;
}

std::string point_string(const std::vector<Fq>& point) {
    std::string out = "(";
    for (size_t i = 0; i < point.size(); ++i) {
        if (i) out += " : ";
        out += element_string(point[i]);
    }
    return out + ")";
}

std::vector<std::vector<Fq>> parse_matrix(std::string_view in, const FieldPtr& f) {
    std::string_view s = trimmed(in);
    if (s.size() < 4 || s.front() != '[' || s.back() != ']') throw ParseError("matrix must be '[[...], [...]]'");
    s = s.substr(1, s.size() - 2);
    std::vector<std::vector<Fq>> rows;
    size_t pos = 0;
    while (pos < s.size()) {
        const size_t open = s.find('[', pos);
        if (open == std::string_view::npos) break;
        const size_t close = s.find(']', open);
        if (close == std::string_view::npos) throw ParseError("unterminated matrix row");
        std::string_view row = s.substr(open + 1, close - open - 1);
        std::vector<Fq> entries;
        size_t start = 0;
        while (true) {
            const size_t comma = row.find(',', start);
            const std::string_view piece =
                comma == std::string_view::npos ? row.substr(start) : row.substr(start, comma - start);
            entries.push_back(parse_element(piece, f));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(entries));
        pos = close + 1;
    }
    if (rows.empty()) throw ParseError("empty matrix");
    for (const auto& r : rows)
        if (r.size() != rows[0].size()) throw ParseError("ragged matrix");
    return rows;
}

std::string matrix_string(const std::vector<std::vector<Fq>>& m) {
    std::string out = "[";
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) out += ", ";
        out += "[";
        for (size_t j = 0; j < m[i].size(); ++j) {
            if (j) out += ", ";
            out += element_string(m[i][j]);
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace onepoint
