#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rlnc/errors.hpp"

namespace rlnc {

// Canonical index of a base-field element, 0 <= index < q <= 2^16.
// For q = p^d with d > 1 the index is the base-p digit encoding of the
// coefficient vector, least significant digit first.
using felem = std::uint16_t;

class MatFq; // linalg.hpp

bool is_prime(unsigned n);
bool is_prime_power(unsigned n, unsigned* p = nullptr, unsigned* d = nullptr);
unsigned smallest_prime_power_at_least(unsigned n);

// F_q, q = p^d <= 2^16, with exp/log tables over a fixed generator.
// Immutable after construction and safe to share between threads.
class BaseField {
public:
    static std::shared_ptr<const BaseField> make(unsigned p, unsigned d = 1);
    // Factors q and delegates to make(p, d).
    static std::shared_ptr<const BaseField> make_order(unsigned q);

    unsigned characteristic() const { return p_; }
    unsigned degree() const { return d_; }
    unsigned order() const { return q_; }

    felem add(felem a, felem b) const;
    felem sub(felem a, felem b) const;
    felem neg(felem a) const;
    felem mul(felem a, felem b) const;
    felem inv(felem a) const; // throws FieldError on 0
    felem div(felem a, felem b) const;
    felem pow(felem a, long long e) const;

    felem generator() const { return gen_; }
    unsigned log(felem a) const; // throws FieldError on 0
    felem exp(std::uint64_t e) const;

    // Base-p coefficient vector of an element, d digits, LSB first.
    std::vector<felem> digits(felem a) const;
    felem from_digits(std::span<const felem> v) const;

    // Defining polynomial over F_p used when d > 1 (m_0..m_{d-1}, leading 1
    // implicit); empty for prime fields.
    const std::vector<felem>& modulus() const { return mod_; }

    bool operator==(const BaseField& o) const { return p_ == o.p_ && d_ == o.d_; }

private:
    BaseField() = default;
    void check(felem a) const;

    unsigned p_ = 0, d_ = 0, q_ = 0;
    felem gen_ = 0;
    std::vector<felem> mod_;
    std::vector<felem> exp_;      // size q-1, exp_[i] = g^i
    std::vector<unsigned> log_;   // size q, log_[0] unused
};

// Monic polynomial over a base field. Stores p_0..p_{k-1}; the leading
// coefficient 1 is implicit. Irreducibility is cached once tested.
class MonicPoly {
public:
    MonicPoly(std::shared_ptr<const BaseField> field, std::vector<felem> coeffs);

    unsigned degree() const { return static_cast<unsigned>(coeffs_.size()); }
    felem coeff(unsigned i) const; // valid for i <= degree, coeff(degree) == 1
    const std::vector<felem>& coeffs() const { return coeffs_; }
    const BaseField& field() const { return *field_; }
    const std::shared_ptr<const BaseField>& field_ptr() const { return field_; }

    // Deterministic exact test (Rabin's criterion); result cached.
    bool irreducible() const;
    bool irreducibility_checked() const { return state_ != State::Unknown; }

    std::string to_string(char var = 'x') const;
    bool operator==(const MonicPoly& o) const;

private:
    enum class State : std::uint8_t { Unknown, Yes, No };

    std::shared_ptr<const BaseField> field_;
    std::vector<felem> coeffs_;
    mutable State state_ = State::Unknown;
};

// The monic irreducible of degree k over F_q whose coefficient tuple
// (p_0,...,p_{k-1}), read LSB-first as a base-q integer, is minimal.
// For k == 1 the constant term is additionally required nonzero so that the
// companion matrix stays invertible.
MonicPoly find_irreducible(std::shared_ptr<const BaseField> field, unsigned k);

// Accepts "x^3+x+1" style notation or a coefficient list "(1,1,0,1)"
// (ascending powers; the leading coefficient may be spelled out, in which
// case it must be 1).
MonicPoly parse_poly(std::shared_ptr<const BaseField> field, const std::string& text);

class ExtField;

// Element of F_{q^k} as a coefficient vector over F_q; arithmetic is modulo
// the defining polynomial of the ambient extension.
class ExtFieldElem {
public:
    ExtFieldElem() = default;
    ExtFieldElem(std::shared_ptr<const ExtField> field, std::vector<felem> coeffs);

    const std::vector<felem>& coeffs() const { return c_; }
    const ExtField& ext() const { return *f_; }
    const std::shared_ptr<const ExtField>& ext_ptr() const { return f_; }

    bool is_zero() const;
    bool is_one() const;

    ExtFieldElem operator+(const ExtFieldElem& o) const;
    ExtFieldElem operator-(const ExtFieldElem& o) const;
    ExtFieldElem operator*(const ExtFieldElem& o) const;
    ExtFieldElem operator/(const ExtFieldElem& o) const;
    ExtFieldElem inverse() const;       // throws FieldError on 0
    ExtFieldElem pow(long long e) const;

    bool operator==(const ExtFieldElem& o) const;
    bool operator!=(const ExtFieldElem& o) const { return !(*this == o); }

    // Sum c_i * q^i; used for deterministic ordering and enumeration.
    std::uint64_t index() const;

    // "1+a^2+a^3" style; coefficients printed as base-field indices.
    std::string to_string(char var = 'a') const;
    // "(1,0,1,1)" coefficient tuple.
    std::string to_tuple_string() const;

private:
    std::shared_ptr<const ExtField> f_;
    std::vector<felem> c_;
};

// F_{q^k} = F_q[x]/(p(x)). Immutable; hand out via shared_ptr.
class ExtField : public std::enable_shared_from_this<ExtField> {
public:
    // Canonical modulus from find_irreducible.
    static std::shared_ptr<const ExtField> make(std::shared_ptr<const BaseField> base, unsigned k);
    // Caller-supplied modulus; must test irreducible.
    static std::shared_ptr<const ExtField> make(MonicPoly modulus);

    const BaseField& base() const { return *base_; }
    const std::shared_ptr<const BaseField>& base_ptr() const { return base_; }
    unsigned k() const { return k_; }
    const MonicPoly& modulus() const { return mod_; }

    ExtFieldElem zero() const;
    ExtFieldElem one() const;
    ExtFieldElem alpha() const;
    ExtFieldElem element(std::vector<felem> coeffs) const;
    ExtFieldElem from_index(std::uint64_t idx) const;
    ExtFieldElem from_base(felem c) const;

    // q^k as a 64-bit value; throws BudgetExceededError when it does not fit.
    std::uint64_t order_u64() const;

    bool operator==(const ExtField& o) const { return base() == o.base() && mod_ == o.mod_; }

private:
    explicit ExtField(MonicPoly m);

    std::shared_ptr<const BaseField> base_;
    unsigned k_;
    MonicPoly mod_;
};

// psi: (v_0,...,v_{k-1}) |-> sum v_i alpha^i, and its inverse.
ExtFieldElem psi(const std::shared_ptr<const ExtField>& field, std::span<const felem> v);
std::vector<felem> psi_inv(const ExtFieldElem& a);

// Orientation of the matrix realization of F_{q^k}: powers of the companion
// matrix P or of its transpose.
enum class Orientation { P, PT };

// phi: sum v_i alpha^i |-> sum v_i P^i (or (P^T)^i), a field isomorphism
// onto F_q[P]. Definitions live with the matrix code; declarations here keep
// the map with the field module that owns it.
MatFq companion(const MonicPoly& p);
MatFq phi(const ExtFieldElem& a, Orientation o = Orientation::P);
ExtFieldElem phi_inv(const std::shared_ptr<const ExtField>& field, const MatFq& m,
                     Orientation o = Orientation::P);
// Row-wise psi of an l x k matrix.
std::vector<ExtFieldElem> bar_psi(const std::shared_ptr<const ExtField>& field, const MatFq& m);
MatFq bar_psi_inv(std::span<const ExtFieldElem> v);

// "q=2,k=3,p=x^3+x^2+1"; p is optional and defaults to the canonical choice.
std::shared_ptr<const ExtField> parse_field_spec(const std::string& spec);

} // namespace rlnc
