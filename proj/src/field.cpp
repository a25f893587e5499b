#include "onepoint/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace onepoint {

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Dense univariate arithmetic over Z/p, used only for modulus selection and
// irreducibility checking.  Coefficient index = power of t.
using ZpPoly = std::vector<int64_t>;

void zp_trim(ZpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f by monic g.
ZpPoly zp_mod(ZpPoly f, const ZpPoly& g, int64_t p) {
    zp_trim(f);
    const int dg = int(g.size()) - 1;
    while (int(f.size()) - 1 >= dg && !f.empty()) {
        const int shift = int(f.size()) - 1 - dg;
        const int64_t c = f.back();
        for (int i = 0; i <= dg; ++i) {
            int64_t& slot = f[size_t(shift + i)];
            slot = (slot - c * g[size_t(i)]) % p;
            if (slot < 0) slot += p;
        }
        zp_trim(f);
    }
    return f;
}

bool zp_divides(const ZpPoly& g, const ZpPoly& f, int64_t p) { return zp_mod(f, g, p).empty(); }

// Monic polynomial of degree d encoded by the base-p digits of n.
ZpPoly zp_decode_monic(int64_t n, int d, int64_t p) {
    ZpPoly g(size_t(d) + 1, 0);
    for (int i = 0; i < d; ++i) {
        g[size_t(i)] = n % p;
        n /= p;
    }
    g[size_t(d)] = 1;
    return g;
}

bool zp_irreducible(const ZpPoly& f, int64_t p) {
    const int deg = int(f.size()) - 1;
    if (deg < 1) return false;
    if (deg == 1) return true;
    // Trial division by every monic polynomial of degree 1..deg/2.  Fine at
    // enumeration scale (p^k is capped at 2^20).
    for (int d = 1; 2 * d <= deg; ++d) {
        int64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int64_t n = 0; n < count; ++n)
            if (zp_divides(zp_decode_monic(n, d, p), f, p)) return false;
    }
    return true;
}

int64_t ipow_checked(int64_t base, int exp, int64_t cap) {
    int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

}  // namespace

FieldConfig::FieldConfig(int64_t p, int k, std::vector<int64_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
    order_ = 1;
    for (int i = 0; i < k_; ++i) order_ *= p_;
    std::ostringstream os;
    os << p_ << '^' << k_ << ";mod=";
    for (size_t i = 0; i < modulus_.size(); ++i) {
        if (i) os << ',';
        os << modulus_[i];
    }
    key_ = os.str();
}

FieldPtr FieldConfig::make(int64_t p, int k, std::optional<std::vector<int64_t>> modulus, int64_t p_limit) {
    if (!is_prime(p)) throw NonPrimeError(p);
    if (p > p_limit) throw LimitExceededError("p = " + std::to_string(p) + " exceeds limit " + std::to_string(p_limit));
    if (k < 1) throw FormatError("extension degree must be >= 1");
    if (ipow_checked(p, k, max_order) > max_order)
        throw LimitExceededError("field order " + std::to_string(p) + "^" + std::to_string(k) + " exceeds 2^20");

    std::vector<int64_t> mod;
    if (modulus) {
        mod = *modulus;
        for (auto& c : mod) {
            c %= p;
            if (c < 0) c += p;
        }
        zp_trim(mod);
        if (int(mod.size()) - 1 != k || mod.back() != 1)
            throw FormatError("modulus must be monic of degree k over F_p");
        if (!zp_irreducible(mod, p)) throw ReducibleModulusError("given modulus factors over F_p");
    } else {
        int64_t count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (int64_t n = 0; n < count; ++n) {
            ZpPoly cand = zp_decode_monic(n, k, p);
            if (zp_irreducible(cand, p)) {
                mod = cand;
                break;
            }
        }
        if (mod.empty()) throw InternalError("no irreducible modulus found");  // cannot happen
    }
    return FieldPtr(new FieldConfig(p, k, std::move(mod)));
}

// ---------------------------------------------------------------------------
// Fq

namespace {

void require_field(const FieldPtr& f) {
    if (!f) throw InternalError("detached field element");
}

}  // namespace

Fq Fq::zero(const FieldPtr& f) {
    require_field(f);
    return Fq(f, Coeffs(size_t(f->k()), 0));
}

Fq Fq::one(const FieldPtr& f) { return from_int(f, 1); }

Fq Fq::from_int(const FieldPtr& f, int64_t v) {
    require_field(f);
    Coeffs c(size_t(f->k()), 0);
    v %= f->p();
    if (v < 0) v += f->p();
    c[0] = v;
    return Fq(f, std::move(c));
}

Fq Fq::from_coeffs(const FieldPtr& f, const std::vector<int64_t>& in) {
    require_field(f);
    if (int(in.size()) > f->k()) throw FormatError("too many coefficients for field element");
    Coeffs c(size_t(f->k()), 0);
    for (size_t i = 0; i < in.size(); ++i) {
        int64_t v = in[i] % f->p();
        if (v < 0) v += f->p();
        c[i] = v;
    }
    return Fq(f, std::move(c));
}

bool Fq::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](int64_t v) { return v == 0; });
}

bool Fq::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](int64_t v) { return v == 0; });
}

int64_t Fq::index() const {
    int64_t idx = 0;
    for (size_t i = c_.size(); i-- > 0;) idx = idx * field_->p() + c_[i];
    return idx;
}

void Fq::require_same_field(const Fq& o) const {
    require_field(field_);
    require_field(o.field_);
    if (field_.get() == o.field_.get()) return;
    if (!field_->same(*o.field_))
        throw MixedFieldsError(field_->key() + " vs " + o.field_->key());
}

Fq Fq::operator+(const Fq& o) const {
    require_same_field(o);
    Coeffs r(c_);
    const int64_t p = field_->p();
    for (size_t i = 0; i < r.size(); ++i) {
        r[i] += o.c_[i];
        if (r[i] >= p) r[i] -= p;
    }
    return Fq(field_, std::move(r));
}

Fq Fq::operator-(const Fq& o) const {
    require_same_field(o);
    Coeffs r(c_);
    const int64_t p = field_->p();
    for (size_t i = 0; i < r.size(); ++i) {
        r[i] -= o.c_[i];
        if (r[i] < 0) r[i] += p;
    }
    return Fq(field_, std::move(r));
}

Fq Fq::operator-() const {
    require_field(field_);
    Coeffs r(c_);
    const int64_t p = field_->p();
    for (auto& v : r)
        if (v) v = p - v;
    return Fq(field_, std::move(r));
}

Fq Fq::operator*(const Fq& o) const {
    require_same_field(o);
    const int64_t p = field_->p();
    const int k = field_->k();
    if (k == 1) {
        Coeffs r(1, (c_[0] * o.c_[0]) % p);
        return Fq(field_, std::move(r));
    }
    // Schoolbook product followed by reduction by the monic modulus.
    std::vector<int64_t> prod(size_t(2 * k - 1), 0);
    for (int i = 0; i < k; ++i) {
        if (c_[size_t(i)] == 0) continue;
        for (int j = 0; j < k; ++j) prod[size_t(i + j)] = (prod[size_t(i + j)] + c_[size_t(i)] * o.c_[size_t(j)]) % p;
    }
    const auto& m = field_->modulus();
    for (int d = 2 * k - 2; d >= k; --d) {
        const int64_t c = prod[size_t(d)];
        if (c == 0) continue;
        prod[size_t(d)] = 0;
        for (int i = 0; i < k; ++i) {
            int64_t& slot = prod[size_t(d - k + i)];
            slot = (slot - c * m[size_t(i)]) % p;
            if (slot < 0) slot += p;
        }
    }
    Coeffs r(prod.begin(), prod.begin() + k);
    return Fq(field_, std::move(r));
}

Fq Fq::pow(uint64_t e) const {
    require_field(field_);
    Fq result = Fq::one(field_);
    Fq base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Fq Fq::inv() const {
    require_field(field_);
    if (is_zero()) throw DivisionByZeroError();
    return pow(uint64_t(field_->order() - 2));
}

Fq Fq::operator/(const Fq& o) const {
    require_same_field(o);
    return *this * o.inv();
}

Fq Fq::frobenius(uint64_t iterations) const {
    require_field(field_);
    const uint64_t steps = iterations % uint64_t(field_->k());
    Fq r = *this;
    for (uint64_t i = 0; i < steps; ++i) r = r.pow(uint64_t(field_->p()));
    return r;
}

bool Fq::operator==(const Fq& o) const {
    if (!field_ || !o.field_) return !field_ && !o.field_;
    if (!field_->same(*o.field_)) return false;
    return c_ == o.c_;
}

Fq element_at(const FieldPtr& f, int64_t idx) {
    require_field(f);
    std::vector<int64_t> digits(size_t(f->k()), 0);
    for (int i = 0; i < f->k(); ++i) {
        digits[size_t(i)] = idx % f->p();
        idx /= f->p();
    }
    return Fq::from_coeffs(f, digits);
}

std::vector<Fq> enumerate_field(const FieldPtr& f) {
    require_field(f);
    std::vector<Fq> out;
    out.reserve(size_t(f->order()));
    for (int64_t i = 0; i < f->order(); ++i) out.push_back(element_at(f, i));
    return out;
}

// ---------------------------------------------------------------------------
// Embeddings

namespace {

// Powers theta^0..theta^{k_source-1} of the chosen generator image, per
// (source, target) pair.  Insertion is idempotent, so concurrent population
// is harmless.
std::mutex g_embed_mutex;
std::map<std::pair<std::string, std::string>, std::vector<Fq>>& embed_cache() {
    static std::map<std::pair<std::string, std::string>, std::vector<Fq>> cache;
    return cache;
}

std::vector<Fq> generator_powers(const FieldPtr& source, const FieldPtr& target) {
    const auto key = std::make_pair(source->key(), target->key());
    {
        std::lock_guard<std::mutex> lock(g_embed_mutex);
        auto it = embed_cache().find(key);
        if (it != embed_cache().end()) return it->second;
    }
    // First root of the source modulus in the target, by enumeration order.
    std::optional<Fq> root;
    const auto& m = source->modulus();
    for (int64_t i = 0; i < target->order(); ++i) {
        Fq x = element_at(target, i);
        Fq acc = Fq::zero(target);
        Fq xp = Fq::one(target);
        for (size_t j = 0; j < m.size(); ++j) {
            acc = acc + xp * Fq::from_int(target, m[j]);
            if (j + 1 < m.size()) xp = xp * x;
        }
        if (acc.is_zero()) {
            root = x;
            break;
        }
    }
    if (!root) throw InternalError("source modulus has no root in compatible target");
    std::vector<Fq> powers;
    powers.reserve(size_t(source->k()));
    Fq acc = Fq::one(target);
    for (int i = 0; i < source->k(); ++i) {
        powers.push_back(acc);
        acc = acc * *root;
    }
    std::lock_guard<std::mutex> lock(g_embed_mutex);
    return embed_cache().emplace(key, std::move(powers)).first->second;
}

}  // namespace

Fq embed(const Fq& a, const FieldPtr& target) {
    require_field(a.field());
    require_field(target);
    const FieldPtr& source = a.field();
    if (source->same(*target)) {
        std::vector<int64_t> c(a.coeffs().begin(), a.coeffs().end());
        return Fq::from_coeffs(target, c);
    }
    if (source->p() != target->p())
        throw IncompatibleTowerError("characteristic mismatch: " + source->key() + " vs " + target->key());
    if (target->k() % source->k() != 0)
        throw IncompatibleTowerError(std::to_string(source->k()) + " does not divide " + std::to_string(target->k()));
    const std::vector<Fq> powers = generator_powers(source, target);
    Fq acc = Fq::zero(target);
    for (int i = 0; i < source->k(); ++i) {
        const int64_t c = a.coeffs()[size_t(i)];
        if (c) acc = acc + powers[size_t(i)] * Fq::from_int(target, c);
    }
    return acc;
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
    require_field(a);
    require_field(b);
    if (a->same(*b)) return a;
    if (a->p() != b->p())
        throw IncompatibleTowerError("characteristic mismatch: " + a->key() + " vs " + b->key());
    if (b->k() % a->k() == 0) return b;
    if (a->k() % b->k() == 0) return a;
    const int64_t g = std::gcd(int64_t(a->k()), int64_t(b->k()));
    const int64_t l = int64_t(a->k()) / g * b->k();
    return FieldConfig::make(a->p(), int(l));
}

}  // namespace onepoint
