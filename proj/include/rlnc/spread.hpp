#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rlnc/linalg.hpp"

namespace rlnc {

// Normalized vector in F_{q^k}^m: nonzero, first nonzero entry equal to 1.
// Canonical codeword identity of a Desarguesian spread.
class GrassmannPoint {
public:
    // Normalizes; throws FieldError on the zero vector.
    explicit GrassmannPoint(std::vector<ExtFieldElem> coords);

    unsigned size() const { return static_cast<unsigned>(u_.size()); }
    const ExtFieldElem& at(unsigned i) const { return u_[i]; }
    const std::vector<ExtFieldElem>& coords() const { return u_; }
    unsigned leading_index() const; // position of the leading 1

    bool operator==(const GrassmannPoint& o) const { return u_ == o.u_; }
    bool operator!=(const GrassmannPoint& o) const { return !(*this == o); }

    // "(1,0,0,0),(1,0,1,1)" coefficient tuples
    std::string to_string() const;

private:
    std::vector<ExtFieldElem> u_;
};

// A codeword basis in the canonical block form (0|...|0|I|B|...|B); plain
// matrix, validated by is_codeword_matrix.
using CodewordMatrix = MatFq;

// Desarguesian spread built from the companion matrix of the extension's
// defining polynomial, in plain or transposed orientation. Immutable.
class SpreadCode {
public:
    SpreadCode(std::shared_ptr<const ExtField> ext, unsigned m, Orientation orient);

    const ExtField& ext() const { return *ext_; }
    const std::shared_ptr<const ExtField>& ext_ptr() const { return ext_; }
    const std::shared_ptr<const BaseField>& field_ptr() const { return ext_->base_ptr(); }
    unsigned q() const { return ext_->base().order(); }
    unsigned k() const { return ext_->k(); }
    unsigned m() const { return m_; }
    unsigned n() const { return m_ * ext_->k(); }
    Orientation orientation() const { return orient_; }
    const MatFq& companion_matrix() const { return p_; }

    // (q^n - 1)/(q^k - 1); throws BudgetExceededError if it overflows 64 bits.
    std::uint64_t size() const;

    // Canonical basis matrix of the codeword named by u; block i equals
    // phi(u_i) in the code's orientation.
    CodewordMatrix encode(const GrassmannPoint& u) const;

    // The unique codeword containing the nonzero vector v, as a normalized
    // Grassmann point. Well-defined row-wise only for the transposed
    // orientation; throws ConfigError otherwise.
    GrassmannPoint identify(std::span<const felem> v) const;

    // Every codeword exactly once, ordered lexicographically by the index
    // tuple of the normalized Grassmann point.
    void for_each_codeword(const std::function<void(const GrassmannPoint&, const CodewordMatrix&)>& fn,
                           std::uint64_t budget = 1u << 20) const;
    std::vector<GrassmannPoint> enumerate_points(std::uint64_t budget = 1u << 20) const;

    GrassmannPoint random_point(Rng& rng) const;

    bool is_codeword_matrix(const MatFq& m) const;

    std::string spec_string() const;

private:
    std::shared_ptr<const ExtField> ext_;
    unsigned m_;
    Orientation orient_;
    MatFq p_;
};

// "spread:q=2,k=4,m=2,p=x^4+x+1,orient=T" (p and orient optional; orient
// defaults to P, values P|T). The "spread:" prefix itself is optional.
SpreadCode parse_spread_spec(const std::string& spec);

} // namespace rlnc
