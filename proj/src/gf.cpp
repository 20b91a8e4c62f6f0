#include "rlnc/gf.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "rlnc/linalg.hpp"
#include "detail/polyarith.hpp"
#include "detail/strings.hpp"

namespace rlnc {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_prime_power(unsigned n, unsigned* p_out, unsigned* d_out) {
    if (n < 2) return false;
    unsigned p = n;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) { p = d; break; }
    unsigned d = 0, m = n;
    while (m % p == 0) { m /= p; ++d; }
    if (m != 1) return false;
    if (p_out) *p_out = p;
    if (d_out) *d_out = d;
    return true;
}

unsigned smallest_prime_power_at_least(unsigned n) {
    for (unsigned q = std::max(2u, n);; ++q)
        if (is_prime_power(q)) return q;
}

namespace {

std::vector<unsigned> prime_factors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<unsigned> prime_factors_of_degree(unsigned k) { return prime_factors(k); }

// Raw arithmetic on digit-encoded elements of F_{p^d}, used only while the
// exp/log tables are being built.
struct RawExt {
    unsigned p, d, q;
    std::vector<felem> mod; // m_0..m_{d-1}, leading 1 implicit

    std::vector<unsigned> digits(unsigned a) const {
        std::vector<unsigned> v(d);
        for (unsigned i = 0; i < d; ++i) { v[i] = a % p; a /= p; }
        return v;
    }
    unsigned pack(const std::vector<unsigned>& v) const {
        unsigned a = 0;
        for (unsigned i = d; i-- > 0;) a = a * p + v[i];
        return a;
    }
    unsigned mul(unsigned a, unsigned b) const {
        std::vector<unsigned> va = digits(a), vb = digits(b);
        std::vector<unsigned> prod(2 * d - 1, 0);
        for (unsigned i = 0; i < d; ++i) {
            if (!va[i]) continue;
            for (unsigned j = 0; j < d; ++j)
                prod[i + j] = (prod[i + j] + va[i] * vb[j]) % p;
        }
        // fold x^t (t >= d) using x^d = -(m_0 + ... + m_{d-1} x^{d-1})
        for (unsigned t = 2 * d - 2; t >= d && t < prod.size(); --t) {
            unsigned c = prod[t];
            if (!c) continue;
            prod[t] = 0;
            for (unsigned i = 0; i < d; ++i) {
                unsigned sub = (c * mod[i]) % p;
                unsigned& slot = prod[t - d + i];
                slot = (slot + p - sub) % p;
            }
        }
        std::vector<unsigned> v(prod.begin(), prod.begin() + d);
        return pack(v);
    }
    unsigned pow(unsigned a, unsigned e) const {
        unsigned r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
};

// Minimal monic irreducible of degree d over F_p by LSB-first base-p value
// of the coefficient tuple. Uses trial division; only called at field
// construction time where p^d <= 2^16.
std::vector<felem> minimal_irreducible_mod_p(unsigned p, unsigned d) {
    auto reducible = [&](const std::vector<felem>& m) {
        // trial division by all monic polynomials of degree 1..d/2
        std::vector<unsigned> full(d + 1);
        for (unsigned i = 0; i < d; ++i) full[i] = m[i];
        full[d] = 1;
        for (unsigned deg = 1; 2 * deg <= d; ++deg) {
            unsigned count = 1;
            for (unsigned i = 0; i < deg; ++i) count *= p;
            for (unsigned t = 0; t < count; ++t) {
                std::vector<unsigned> div(deg + 1);
                unsigned tt = t;
                for (unsigned i = 0; i < deg; ++i) { div[i] = tt % p; tt /= p; }
                div[deg] = 1;
                // remainder of full by div over F_p
                std::vector<unsigned> rem = full;
                while (rem.size() >= div.size()) {
                    unsigned c = rem.back(); // divisor monic
                    unsigned shift = static_cast<unsigned>(rem.size() - div.size());
                    for (unsigned i = 0; i < div.size(); ++i)
                        rem[shift + i] = (rem[shift + i] + p - (c * div[i]) % p) % p;
                    while (!rem.empty() && rem.back() == 0) rem.pop_back();
                }
                if (rem.empty()) return true;
            }
        }
        return false;
    };
    unsigned count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned t = 0; t < count; ++t) {
        std::vector<felem> m(d);
        unsigned tt = t;
        for (unsigned i = 0; i < d; ++i) { m[i] = static_cast<felem>(tt % p); tt /= p; }
        if (m[0] == 0) continue; // divisible by x
        if (!reducible(m)) return m;
    }
    throw FieldError("no irreducible polynomial found (unreachable)");
}

} // namespace

std::shared_ptr<const BaseField> BaseField::make(unsigned p, unsigned d) {
    if (!is_prime(p)) throw FieldError("characteristic must be prime, got " + std::to_string(p));
    if (d < 1) throw FieldError("field degree must be >= 1");
    unsigned long long q = 1;
    for (unsigned i = 0; i < d; ++i) {
        q *= p;
        if (q > 65536ull) throw FieldError("field order exceeds 2^16");
    }

    auto f = std::shared_ptr<BaseField>(new BaseField());
    f->p_ = p;
    f->d_ = d;
    f->q_ = static_cast<unsigned>(q);
    if (d > 1) f->mod_ = minimal_irreducible_mod_p(p, d);

    RawExt raw{p, d, f->q_, f->mod_};
    auto raw_mul = [&](unsigned a, unsigned b) -> unsigned {
        if (d == 1) return (a * b) % p;
        return raw.mul(a, b);
    };
    auto raw_pow = [&](unsigned a, unsigned e) {
        unsigned r = 1;
        while (e) {
            if (e & 1) r = raw_mul(r, a);
            a = raw_mul(a, a);
            e >>= 1;
        }
        return r;
    };

    // smallest generator of the multiplicative group
    unsigned order = f->q_ - 1;
    std::vector<unsigned> factors = prime_factors(order);
    unsigned gen = 0;
    for (unsigned g = 1; g < f->q_; ++g) {
        bool ok = true;
        for (unsigned fac : factors)
            if (raw_pow(g, order / fac) == 1) { ok = false; break; }
        if (ok && order == 1) ok = (g == 1);
        if (ok) { gen = g; break; }
    }
    f->gen_ = static_cast<felem>(gen);

    f->exp_.resize(order);
    f->log_.assign(f->q_, 0);
    unsigned x = 1;
    for (unsigned i = 0; i < order; ++i) {
        f->exp_[i] = static_cast<felem>(x);
        f->log_[x] = i;
        x = raw_mul(x, gen);
    }
    return f;
}

std::shared_ptr<const BaseField> BaseField::make_order(unsigned q) {
    unsigned p, d;
    if (!is_prime_power(q, &p, &d))
        throw FieldError("field order must be a prime power, got " + std::to_string(q));
    return make(p, d);
}

void BaseField::check(felem a) const {
    if (a >= q_) throw FieldError("element index " + std::to_string(a) + " out of range for F_" + std::to_string(q_));
}

felem BaseField::add(felem a, felem b) const {
    check(a); check(b);
    if (d_ == 1) return static_cast<felem>((a + b) % p_);
    if (p_ == 2) return static_cast<felem>(a ^ b);
    unsigned r = 0, mul = 1;
    unsigned x = a, y = b;
    for (unsigned i = 0; i < d_; ++i) {
        r += ((x % p_ + y % p_) % p_) * mul;
        x /= p_; y /= p_;
        mul *= p_;
    }
    return static_cast<felem>(r);
}

felem BaseField::neg(felem a) const {
    check(a);
    if (d_ == 1) return static_cast<felem>((p_ - a) % p_);
    if (p_ == 2) return a;
    unsigned r = 0, mul = 1, x = a;
    for (unsigned i = 0; i < d_; ++i) {
        r += ((p_ - x % p_) % p_) * mul;
        x /= p_;
        mul *= p_;
    }
    return static_cast<felem>(r);
}

felem BaseField::sub(felem a, felem b) const { return add(a, neg(b)); }

felem BaseField::mul(felem a, felem b) const {
    check(a); check(b);
    if (a == 0 || b == 0) return 0;
    unsigned s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
}

felem BaseField::inv(felem a) const {
    check(a);
    if (a == 0) throw FieldError("inversion of zero");
    unsigned l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

felem BaseField::div(felem a, felem b) const { return mul(a, inv(b)); }

felem BaseField::pow(felem a, long long e) const {
    check(a);
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw FieldError("inversion of zero");
        return 0;
    }
    long long order = q_ - 1;
    long long r = (static_cast<long long>(log_[a]) * (e % order)) % order;
    if (r < 0) r += order;
    return exp_[r];
}

unsigned BaseField::log(felem a) const {
    check(a);
    if (a == 0) throw FieldError("zero has no logarithm");
    return log_[a];
}

felem BaseField::exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

std::vector<felem> BaseField::digits(felem a) const {
    check(a);
    std::vector<felem> v(d_);
    unsigned x = a;
    for (unsigned i = 0; i < d_; ++i) { v[i] = static_cast<felem>(x % p_); x /= p_; }
    return v;
}

felem BaseField::from_digits(std::span<const felem> v) const {
    if (v.size() != d_) throw FieldError("digit vector has wrong length");
    unsigned a = 0;
    for (unsigned i = d_; i-- > 0;) {
        if (v[i] >= p_) throw FieldError("digit out of range");
        a = a * p_ + v[i];
    }
    return static_cast<felem>(a);
}

// ---------------------------------------------------------------------------

MonicPoly::MonicPoly(std::shared_ptr<const BaseField> field, std::vector<felem> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) throw FieldError("polynomial needs a field");
    if (coeffs_.empty()) throw FieldError("monic polynomial needs degree >= 1");
    for (felem c : coeffs_)
        if (c >= field_->order()) throw FieldError("coefficient out of range");
}

felem MonicPoly::coeff(unsigned i) const {
    if (i == degree()) return 1;
    if (i > degree()) throw FieldError("coefficient index out of range");
    return coeffs_[i];
}

bool MonicPoly::irreducible() const {
    if (state_ != State::Unknown) return state_ == State::Yes;
    const BaseField& f = *field_;
    unsigned k = degree();
    detail::Poly mod(coeffs_.begin(), coeffs_.end());
    mod.push_back(1);

    bool ok = true;
    if (k == 1) {
        ok = true;
    } else {
        // Rabin: x^{q^k} == x mod p, and gcd(x^{q^{k/t}} - x, p) == 1 for
        // every prime t | k.
        std::vector<detail::Poly> frob(k + 1);
        frob[0] = {0, 1}; // x
        for (unsigned j = 1; j <= k; ++j)
            frob[j] = detail::poly_powmod(f, frob[j - 1], f.order(), mod);
        detail::Poly x = {0, 1};
        if (detail::poly_sub(f, frob[k], x) != detail::Poly{}) ok = false;
        if (ok) {
            for (unsigned t : prime_factors_of_degree(k)) {
                detail::Poly g = detail::poly_gcd(f, detail::poly_sub(f, frob[k / t], x), mod);
                if (detail::poly_deg(g) != 0) { ok = false; break; }
            }
        }
    }
    state_ = ok ? State::Yes : State::No;
    return ok;
}

std::string MonicPoly::to_string(char var) const {
    std::ostringstream os;
    bool first = true;
    auto term = [&](felem c, unsigned e) {
        if (c == 0) return;
        if (!first) os << '+';
        first = false;
        if (e == 0) { os << static_cast<unsigned>(c); return; }
        if (c != 1) os << static_cast<unsigned>(c);
        os << var;
        if (e > 1) os << '^' << e;
    };
    term(1, degree());
    for (unsigned i = degree(); i-- > 0;) term(coeffs_[i], i);
    return os.str();
}

bool MonicPoly::operator==(const MonicPoly& o) const {
    return *field_ == *o.field_ && coeffs_ == o.coeffs_;
}

MonicPoly find_irreducible(std::shared_ptr<const BaseField> field, unsigned k) {
    if (k < 1) throw FieldError("degree must be >= 1");
    const unsigned q = field->order();
    std::vector<felem> c(k, 0);
    for (;;) {
        bool skip = (k == 1 && c[0] == 0); // keep the companion matrix invertible
        if (!skip) {
            MonicPoly p(field, c);
            if (p.irreducible()) return p;
        }
        // increment the base-q counter (c_0 least significant)
        unsigned i = 0;
        while (i < k && c[i] == q - 1) c[i++] = 0;
        if (i == k) throw FieldError("no irreducible polynomial found (unreachable)");
        ++c[i];
    }
}

MonicPoly parse_poly(std::shared_ptr<const BaseField> field, const std::string& text) {
    std::string t = detail::trim(text);
    if (t.empty()) throw ParseError("empty polynomial");
    if (t.front() == '(') {
        if (t.back() != ')') throw ParseError("unbalanced parentheses in '" + text + "'");
        // full coefficient list, ascending powers, leading coefficient included
        std::vector<felem> c;
        for (const std::string& tok : detail::split_top_level(t.substr(1, t.size() - 2), ','))
            c.push_back(static_cast<felem>(detail::parse_uint(tok, "coefficient")));
        if (c.size() < 2) throw ParseError("coefficient list needs degree >= 1");
        if (c.back() != 1) throw ParseError("polynomial must be monic");
        c.pop_back();
        return MonicPoly(field, c);
    }

    // "x^3+x+1" style, ascending or descending order of terms
    std::vector<std::pair<unsigned, felem>> terms;
    unsigned max_deg = 0;
    for (const std::string& raw : detail::split_top_level(t, '+')) {
        std::string term = detail::trim(raw);
        if (term.empty()) throw ParseError("empty term in '" + text + "'");
        std::size_t xpos = term.find_first_of("xX");
        felem coeff = 1;
        unsigned deg = 0;
        if (xpos == std::string::npos) {
            coeff = static_cast<felem>(detail::parse_uint(term, "constant term"));
            deg = 0;
        } else {
            std::string cpart = detail::trim(term.substr(0, xpos));
            if (!cpart.empty()) coeff = static_cast<felem>(detail::parse_uint(cpart, "coefficient"));
            std::string rest = detail::trim(term.substr(xpos + 1));
            if (rest.empty()) deg = 1;
            else {
                if (rest.front() != '^') throw ParseError("bad term '" + term + "'");
                deg = static_cast<unsigned>(detail::parse_uint(rest.substr(1), "exponent"));
            }
        }
        terms.emplace_back(deg, coeff);
        max_deg = std::max(max_deg, deg);
    }
    if (max_deg == 0) throw ParseError("polynomial must have degree >= 1");
    std::vector<felem> c(max_deg, 0);
    bool saw_lead = false;
    for (auto [deg, coeff] : terms) {
        if (deg == max_deg) {
            if (coeff != 1) throw ParseError("polynomial must be monic");
            if (saw_lead) throw ParseError("duplicate leading term");
            saw_lead = true;
            continue;
        }
        c[deg] = field->add(c[deg], coeff); // folds duplicate terms
    }
    return MonicPoly(field, c);
}

// ---------------------------------------------------------------------------

ExtField::ExtField(MonicPoly m) : base_(m.field_ptr()), k_(m.degree()), mod_(std::move(m)) {}

std::shared_ptr<const ExtField> ExtField::make(std::shared_ptr<const BaseField> base, unsigned k) {
    return make(find_irreducible(std::move(base), k));
}

std::shared_ptr<const ExtField> ExtField::make(MonicPoly modulus) {
    if (!modulus.irreducible())
        throw FieldError("modulus " + modulus.to_string() + " is not irreducible");
    return std::shared_ptr<const ExtField>(new ExtField(std::move(modulus)));
}

ExtFieldElem ExtField::zero() const { return element(std::vector<felem>(k_, 0)); }

ExtFieldElem ExtField::one() const {
    std::vector<felem> c(k_, 0);
    c[0] = 1;
    return element(std::move(c));
}

ExtFieldElem ExtField::alpha() const {
    if (k_ == 1) {
        // alpha is the root of the linear modulus: x + p_0 = 0
        std::vector<felem> c{base_->neg(mod_.coeff(0))};
        return element(std::move(c));
    }
    std::vector<felem> c(k_, 0);
    c[1] = 1;
    return element(std::move(c));
}

ExtFieldElem ExtField::element(std::vector<felem> coeffs) const {
    return ExtFieldElem(shared_from_this(), std::move(coeffs));
}

ExtFieldElem ExtField::from_index(std::uint64_t idx) const {
    const unsigned q = base_->order();
    std::vector<felem> c(k_);
    for (unsigned i = 0; i < k_; ++i) { c[i] = static_cast<felem>(idx % q); idx /= q; }
    if (idx != 0) throw FieldError("index out of range for extension field");
    return element(std::move(c));
}

ExtFieldElem ExtField::from_base(felem c) const {
    std::vector<felem> v(k_, 0);
    v[0] = c;
    return element(std::move(v));
}

std::uint64_t ExtField::order_u64() const {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < k_; ++i) {
        if (v > (std::uint64_t(1) << 62) / base_->order())
            throw BudgetExceededError("extension field order does not fit in 64 bits");
        v *= base_->order();
    }
    return v;
}

ExtFieldElem::ExtFieldElem(std::shared_ptr<const ExtField> field, std::vector<felem> coeffs)
    : f_(std::move(field)), c_(std::move(coeffs)) {
    if (c_.size() != f_->k()) throw FieldError("coefficient vector has wrong length");
    for (felem x : c_)
        if (x >= f_->base().order()) throw FieldError("coefficient out of range");
}

bool ExtFieldElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](felem x) { return x == 0; });
}

bool ExtFieldElem::is_one() const {
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](felem x) { return x == 0; });
}

ExtFieldElem ExtFieldElem::operator+(const ExtFieldElem& o) const {
    if (!(*f_ == *o.f_)) throw FieldError("elements of different extensions");
    const BaseField& f = f_->base();
    std::vector<felem> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f.add(c_[i], o.c_[i]);
    return ExtFieldElem(f_, std::move(r));
}

ExtFieldElem ExtFieldElem::operator-(const ExtFieldElem& o) const {
    if (!(*f_ == *o.f_)) throw FieldError("elements of different extensions");
    const BaseField& f = f_->base();
    std::vector<felem> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = f.sub(c_[i], o.c_[i]);
    return ExtFieldElem(f_, std::move(r));
}

ExtFieldElem ExtFieldElem::operator*(const ExtFieldElem& o) const {
    if (!(*f_ == *o.f_)) throw FieldError("elements of different extensions");
    const BaseField& f = f_->base();
    const unsigned k = f_->k();
    detail::Poly mod(f_->modulus().coeffs().begin(), f_->modulus().coeffs().end());
    mod.push_back(1);
    detail::Poly a(c_.begin(), c_.end()), b(o.c_.begin(), o.c_.end());
    detail::poly_trim(a);
    detail::poly_trim(b);
    detail::Poly r = detail::poly_mod(f, detail::poly_mul(f, a, b), mod);
    r.resize(k, 0);
    return ExtFieldElem(f_, std::vector<felem>(r.begin(), r.end()));
}

ExtFieldElem ExtFieldElem::inverse() const {
    if (is_zero()) throw FieldError("inversion of zero");
    const BaseField& f = f_->base();
    detail::Poly mod(f_->modulus().coeffs().begin(), f_->modulus().coeffs().end());
    mod.push_back(1);
    // extended Euclid: s*a + t*mod = gcd
    detail::Poly r0 = mod, r1(c_.begin(), c_.end());
    detail::poly_trim(r1);
    detail::Poly s0 = {}, s1 = {1};
    while (!r1.empty()) {
        detail::Poly q, rem;
        detail::poly_divmod(f, r0, r1, &q, &rem);
        detail::Poly s2 = detail::poly_sub(f, s0, detail::poly_mul(f, q, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd (a constant, since the modulus is irreducible)
    felem scale = f.inv(r0[0]);
    detail::Poly inv = detail::poly_scale(f, s0, scale);
    inv.resize(f_->k(), 0);
    return ExtFieldElem(f_, std::vector<felem>(inv.begin(), inv.end()));
}

ExtFieldElem ExtFieldElem::operator/(const ExtFieldElem& o) const { return *this * o.inverse(); }

ExtFieldElem ExtFieldElem::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    ExtFieldElem r = f_->one();
    ExtFieldElem b = *this;
    unsigned long long u = static_cast<unsigned long long>(e);
    while (u) {
        if (u & 1) r = r * b;
        b = b * b;
        u >>= 1;
    }
    return r;
}

bool ExtFieldElem::operator==(const ExtFieldElem& o) const {
    return *f_ == *o.f_ && c_ == o.c_;
}

std::uint64_t ExtFieldElem::index() const {
    const unsigned q = f_->base().order();
    std::uint64_t v = 0;
    for (unsigned i = f_->k(); i-- > 0;) v = v * q + c_[i];
    return v;
}

std::string ExtFieldElem::to_string(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (unsigned i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) { os << static_cast<unsigned>(c_[i]); continue; }
        if (c_[i] != 1) os << static_cast<unsigned>(c_[i]);
        os << var;
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

std::string ExtFieldElem::to_tuple_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ',';
        os << static_cast<unsigned>(c_[i]);
    }
    os << ')';
    return os.str();
}

ExtFieldElem psi(const std::shared_ptr<const ExtField>& field, std::span<const felem> v) {
    if (v.size() != field->k()) throw DimensionError("psi expects a vector of length k");
    return field->element(std::vector<felem>(v.begin(), v.end()));
}

std::vector<felem> psi_inv(const ExtFieldElem& a) { return a.coeffs(); }

// --------------------------------------------------------------------------
// matrix realizations

MatFq companion(const MonicPoly& p) {
    const unsigned k = p.degree();
    MatFq m = MatFq::zero(p.field_ptr(), k, k);
    for (unsigned i = 0; i + 1 < k; ++i) m.at(i + 1, i) = 1;
    for (unsigned i = 0; i < k; ++i) m.at(i, k - 1) = p.field().neg(p.coeff(i));
    return m;
}

MatFq phi(const ExtFieldElem& a, Orientation o) {
    const auto& ext = a.ext();
    const unsigned k = ext.k();
    MatFq p = companion(ext.modulus());
    MatFq acc = MatFq::zero(ext.base_ptr(), k, k);
    MatFq power = MatFq::identity(ext.base_ptr(), k);
    for (unsigned i = 0; i < k; ++i) {
        if (a.coeffs()[i] != 0) acc = acc + power.scaled(a.coeffs()[i]);
        if (i + 1 < k) power = power * p;
    }
    return o == Orientation::P ? acc : acc.transposed();
}

ExtFieldElem phi_inv(const std::shared_ptr<const ExtField>& field, const MatFq& m, Orientation o) {
    const unsigned k = field->k();
    if (m.rows() != k || m.cols() != k) throw DimensionError("phi_inv expects a k x k matrix");
    std::vector<felem> c(k);
    for (unsigned i = 0; i < k; ++i)
        c[i] = (o == Orientation::P) ? m.at(i, 0) : m.at(0, i);
    return field->element(std::move(c));
}

std::vector<ExtFieldElem> bar_psi(const std::shared_ptr<const ExtField>& field, const MatFq& m) {
    if (m.cols() != field->k()) throw DimensionError("bar_psi expects row width k");
    std::vector<ExtFieldElem> out;
    out.reserve(m.rows());
    for (unsigned r = 0; r < m.rows(); ++r) out.push_back(psi(field, m.row(r)));
    return out;
}

MatFq bar_psi_inv(std::span<const ExtFieldElem> v) {
    if (v.empty()) throw DimensionError("bar_psi_inv expects a nonempty vector");
    const auto& ext = v[0].ext_ptr();
    const unsigned k = ext->k();
    MatFq m = MatFq::zero(ext->base_ptr(), static_cast<unsigned>(v.size()), k);
    for (unsigned r = 0; r < v.size(); ++r) {
        if (!(*v[r].ext_ptr() == *ext)) throw FieldError("mixed extensions in bar_psi_inv");
        for (unsigned c = 0; c < k; ++c) m.at(r, c) = v[r].coeffs()[c];
    }
    return m;
}

std::shared_ptr<const ExtField> parse_field_spec(const std::string& spec) {
    unsigned q = 0, k = 0;
    std::string ptext;
    for (auto& [key, val] : detail::parse_kv(spec)) {
        if (key == "q") q = static_cast<unsigned>(detail::parse_uint(val, "q"));
        else if (key == "k") k = static_cast<unsigned>(detail::parse_uint(val, "k"));
        else if (key == "p") ptext = val;
        else throw ConfigError("unknown field spec key '" + key + "'");
    }
    if (q == 0 || k == 0) throw ConfigError("field spec needs q and k");
    auto base = BaseField::make_order(q);
    if (ptext.empty()) return ExtField::make(base, k);
    MonicPoly p = parse_poly(base, ptext);
    if (p.degree() != k)
        throw ConfigError("polynomial degree " + std::to_string(p.degree()) +
                          " does not match k=" + std::to_string(k));
    return ExtField::make(std::move(p));
}

} // namespace rlnc
