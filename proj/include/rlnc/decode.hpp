#pragma once

#include "rlnc/spread.hpp"

namespace rlnc {

struct DecodeReport {
    GrassmannPoint point;
    unsigned reference_block = 0;
    std::vector<unsigned> erased_cols_per_block;
    unsigned deletions = 0;
};

// REC decoder for spreads in transposed orientation: the first nonzero row
// of the observation, pushed through psi block-wise and normalized,
// identifies the codeword. Output does not depend on the row chosen.
DecodeReport decode_rec(const SpreadCode& code, const MatFq& r);

// CEC decoder for spreads in plain orientation. Needs a nonzero block
// without erased columns; blocks with an unerased zero column decode to
// zero, every other block is reconstructed from a single unerased column.
DecodeReport decode_cec(const SpreadCode& code, const ErasableMatrix& r);
// Same, with the reference block forced (it must still qualify); the result
// does not depend on which qualifying block is used.
DecodeReport decode_cec_using_reference(const SpreadCode& code, const ErasableMatrix& r,
                                        unsigned reference_block);

// CEC decoder tolerating row deletions, for spreads in transposed
// orientation: row reduce, erasure-decode each block in the Gabidulin code
// generated by the reference block, then hand over to the REC decoder.
DecodeReport decode_cec_with_deletions(const SpreadCode& code, const ErasableMatrix& r);

// Finds the coefficients b with sum_i b_i * basis_i matching every unerased
// entry of r. Throws UndecodableError{Underdetermined | Inconsistent}.
std::vector<felem> solve_in_matrix_span(std::span<const MatFq> basis, const ErasableMatrix& r);

// The rank-metric code {S*B : B in F_q[P^T]} (or F_q[P]) for a full-rank
// selection S; in the transposed orientation this is the Gabidulin code with
// generator bar_psi(S). Erasure decoding is a plain linear solve over F_q in
// the k coefficients of B, which covers row and column erasures together.
class GabidulinCode {
public:
    GabidulinCode(std::shared_ptr<const ExtField> ext, MatFq selection,
                  Orientation orient = Orientation::PT);

    const MatFq& selection() const { return s_; }
    unsigned length() const { return s_.rows(); }
    const std::shared_ptr<const ExtField>& ext_ptr() const { return ext_; }
    // Generator of the F_{q^k}-linear form (transposed orientation).
    std::vector<ExtFieldElem> generator() const;

    struct Decoded {
        MatFq word;               // S*B
        ExtFieldElem coefficient; // psi(b), the codeword's F_{q^k} scale
    };
    Decoded erasure_decode(const ErasableMatrix& r) const;

private:
    std::shared_ptr<const ExtField> ext_;
    MatFq s_;
    Orientation orient_;
    std::vector<MatFq> basis_; // S * P^i or S * (P^T)^i
};

inline MatFq rank_metric_erasure_decode(const GabidulinCode& code, const ErasableMatrix& r) {
    return code.erasure_decode(r).word;
}

} // namespace rlnc
