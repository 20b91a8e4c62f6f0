#pragma once

#include "rlnc/linalg.hpp"

namespace rlnc {

// GRS-interleaved subspace code for the column erasure channel: messages are
// k-dimensional subspaces of F_q^{n'}, rows travel as GRS codewords of
// length n. Corrects any n - n' column erasures. Needs q >= n.
//
// Instantiation: evaluation points are the field elements with canonical
// indices 0..n-1, all column multipliers 1, generator in Vandermonde form.
class HybridCode {
public:
    static HybridCode make(std::shared_ptr<const BaseField> field, unsigned n,
                           unsigned n_prime, unsigned k);

    unsigned q() const { return f_->order(); }
    unsigned n() const { return n_; }
    unsigned n_prime() const { return np_; }
    unsigned k() const { return k_; }
    const std::shared_ptr<const BaseField>& field_ptr() const { return f_; }
    const MatFq& generator() const { return g_; }
    felem eval_point(unsigned j) const { return static_cast<felem>(j); }

    // RREF basis of the subspace times the GRS generator; rows are GRS
    // codewords of the coefficient vectors.
    MatFq encode(const Subspace& u) const;

    // Lagrange interpolation of the degree < n' polynomial through the
    // unerased coordinates of row `row`; re-evaluation must match every
    // unerased coordinate. Returns the coefficient vector.
    std::vector<felem> grs_erasure_decode(const ErasableMatrix& m, unsigned row) const;

    // Decodes every row, stacks the messages and returns the RREF subspace.
    // Rank deficiency means deletions, which this decoder does not support.
    Subspace decode_cec(const ErasableMatrix& r) const;

    std::string spec_string() const;

private:
    HybridCode(std::shared_ptr<const BaseField> f, unsigned n, unsigned np, unsigned k);

    std::shared_ptr<const BaseField> f_;
    unsigned n_, np_, k_;
    MatFq g_;
};

// "hybrid:q=7,n=6,np=4,k=2" (prefix optional)
HybridCode parse_hybrid_spec(const std::string& spec);

} // namespace rlnc
