#include "rlnc/decode.hpp"

namespace rlnc {

namespace {

std::vector<unsigned> erased_cols_per_block(const ErasableMatrix& r, unsigned k, unsigned m) {
    std::vector<unsigned> counts(m, 0);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned c = i * k; c < (i + 1) * k; ++c)
            if (r.col_has_erasure(c)) ++counts[i];
    return counts;
}

// A block with an unerased all-zero column came from a zero block: with a
// full-rank channel matrix, A*U_i is either invertible (no zero columns) or
// zero.
bool block_is_zero(const ErasableMatrix& r, unsigned k, unsigned block) {
    for (unsigned c = block * k; c < (block + 1) * k; ++c)
        if (r.col_is_unerased_zero(c)) return true;
    return false;
}

DecodeReport decode_cec_impl(const SpreadCode& code, const ErasableMatrix& r, unsigned ref) {
    const unsigned k = code.k(), m = code.m();
    const auto& ext = code.ext_ptr();

    MatFq ref_block = r.exact_block(ref * k, k); // qualifying reference has no erasures
    MatFq ref_inv;
    try {
        ref_inv = invert(ref_block);
    } catch (const SingularMatrixError&) {
        throw UndecodableError(UndecodableError::Reason::SingularReference,
                               "reference block is singular");
    }

    std::vector<ExtFieldElem> u;
    u.reserve(m);
    for (unsigned i = 0; i < m; ++i) {
        if (block_is_zero(r, k, i)) {
            u.push_back(ext->zero());
            continue;
        }
        // first unerased column of a nonzero block; its entries are exact
        unsigned j = k;
        for (unsigned c = 0; c < k; ++c)
            if (!r.col_has_erasure(i * k + c)) { j = c; break; }
        if (j == k)
            throw UndecodableError(UndecodableError::Reason::TooManyErasures,
                                   "block " + std::to_string(i) + " is fully erased");
        MatFq col(r.field_ptr(), k, 1);
        for (unsigned row = 0; row < k; ++row) col.at(row, 0) = r.value(row, i * k + j);
        MatFq solved = ref_inv * col;
        std::vector<felem> coeffs(k);
        for (unsigned row = 0; row < k; ++row) coeffs[row] = solved.at(row, 0);
        ExtFieldElem h = psi(ext, coeffs);
        u.push_back(ext->alpha().pow(-static_cast<long long>(j)) * h);
    }

    bool all_zero = true;
    for (const auto& e : u)
        if (!e.is_zero()) { all_zero = false; break; }
    if (all_zero)
        throw UndecodableError(UndecodableError::Reason::EmptyObservation,
                               "all blocks decoded to zero");

    DecodeReport rep{GrassmannPoint(std::move(u)), ref, erased_cols_per_block(r, k, m), 0};
    return rep;
}

} // namespace

DecodeReport decode_rec(const SpreadCode& code, const MatFq& r) {
    if (code.orientation() != Orientation::PT)
        throw ConfigError("the REC decoder needs a spread in transposed orientation");
    const unsigned k = code.k(), m = code.m();
    if (r.cols() != code.n()) throw DimensionError("observation width must be n = m*k");
    unsigned row = r.rows();
    for (unsigned i = 0; i < r.rows(); ++i)
        if (!r.row_is_zero(i)) { row = i; break; }
    if (row == r.rows())
        throw UndecodableError(UndecodableError::Reason::EmptyObservation,
                               "observation has no nonzero row");
    std::vector<ExtFieldElem> coords;
    coords.reserve(m);
    for (unsigned i = 0; i < m; ++i)
        coords.push_back(psi(code.ext_ptr(), r.row(row).subspan(std::size_t(i) * k, k)));
    DecodeReport rep{GrassmannPoint(std::move(coords)), 0, std::vector<unsigned>(m, 0), 0};
    rep.reference_block = rep.point.leading_index();
    return rep;
}

DecodeReport decode_cec(const SpreadCode& code, const ErasableMatrix& r) {
    if (code.orientation() != Orientation::P)
        throw ConfigError("the CEC decoder needs a spread in plain orientation");
    const unsigned k = code.k(), m = code.m();
    if (r.rows() != k || r.cols() != code.n()) throw DimensionError("observation must be k x n");
    for (unsigned i = 0; i < m; ++i) {
        bool erasure_free = true;
        for (unsigned c = i * k; c < (i + 1) * k && erasure_free; ++c)
            if (r.col_has_erasure(c)) erasure_free = false;
        if (erasure_free && !block_is_zero(r, k, i)) return decode_cec_impl(code, r, i);
    }
    throw UndecodableError(UndecodableError::Reason::NoReferenceBlock,
                           "no erasure-free nonzero block");
}

DecodeReport decode_cec_using_reference(const SpreadCode& code, const ErasableMatrix& r,
                                        unsigned reference_block) {
    if (code.orientation() != Orientation::P)
        throw ConfigError("the CEC decoder needs a spread in plain orientation");
    const unsigned k = code.k();
    if (r.rows() != k || r.cols() != code.n()) throw DimensionError("observation must be k x n");
    if (reference_block >= code.m()) throw DimensionError("reference block out of range");
    for (unsigned c = reference_block * k; c < (reference_block + 1) * k; ++c)
        if (r.col_has_erasure(c))
            throw UndecodableError(UndecodableError::Reason::NoReferenceBlock,
                                   "requested reference block has erasures");
    if (block_is_zero(r, k, reference_block))
        throw UndecodableError(UndecodableError::Reason::NoReferenceBlock,
                               "requested reference block is zero");
    return decode_cec_impl(code, r, reference_block);
}

std::vector<felem> solve_in_matrix_span(std::span<const MatFq> basis, const ErasableMatrix& r) {
    if (basis.empty()) throw DimensionError("empty basis");
    const unsigned t = static_cast<unsigned>(basis.size());
    const unsigned rows = r.rows(), cols = r.cols();
    for (const MatFq& b : basis)
        if (b.rows() != rows || b.cols() != cols)
            throw DimensionError("basis shape does not match the observation");
    const auto& field = r.field_ptr();

    // one equation per unerased cell: sum_i b_i * basis_i[cell] = r[cell]
    std::vector<std::pair<unsigned, unsigned>> cells;
    for (unsigned rr = 0; rr < rows; ++rr)
        for (unsigned cc = 0; cc < cols; ++cc)
            if (!r.erased(rr, cc)) cells.emplace_back(rr, cc);

    MatFq sys(field, static_cast<unsigned>(cells.size()), t + 1);
    for (unsigned e = 0; e < cells.size(); ++e) {
        auto [rr, cc] = cells[e];
        for (unsigned i = 0; i < t; ++i) sys.at(e, i) = basis[i].at(rr, cc);
        sys.at(e, t) = r.value(rr, cc);
    }

    RrefResult red = rref(sys);
    // a pivot in the augmented column means no solution at all
    for (unsigned p : red.pivots)
        if (p == t)
            throw UndecodableError(UndecodableError::Reason::Inconsistent,
                                   "observation is not consistent with the code");
    unsigned coeff_rank = static_cast<unsigned>(red.pivots.size());
    if (coeff_rank < t)
        throw UndecodableError(UndecodableError::Reason::Underdetermined,
                               "erasure budget exceeded: system rank " +
                                   std::to_string(coeff_rank) + " < " + std::to_string(t));
    std::vector<felem> sol(t);
    for (unsigned i = 0; i < coeff_rank; ++i) sol[red.pivots[i]] = red.r.at(i, t);
    return sol;
}

GabidulinCode::GabidulinCode(std::shared_ptr<const ExtField> ext, MatFq selection, Orientation orient)
    : ext_(std::move(ext)), s_(std::move(selection)), orient_(orient) {
    const unsigned k = ext_->k();
    if (s_.cols() != k) throw DimensionError("selection must have k columns");
    if (s_.rows() == 0 || s_.rows() > k) throw DimensionError("selection needs 1..k rows");
    MatFq p = companion(ext_->modulus());
    if (orient_ == Orientation::PT) p = p.transposed();
    basis_.reserve(k);
    MatFq cur = s_;
    for (unsigned i = 0; i < k; ++i) {
        basis_.push_back(cur);
        if (i + 1 < k) cur = cur * p;
    }
}

std::vector<ExtFieldElem> GabidulinCode::generator() const { return bar_psi(ext_, s_); }

GabidulinCode::Decoded GabidulinCode::erasure_decode(const ErasableMatrix& r) const {
    std::vector<felem> b = solve_in_matrix_span(basis_, r);
    MatFq word = MatFq::zero(s_.field_ptr(), s_.rows(), s_.cols());
    for (unsigned i = 0; i < b.size(); ++i)
        if (b[i] != 0) word = word + basis_[i].scaled(b[i]);
    return {std::move(word), psi(ext_, b)};
}

DecodeReport decode_cec_with_deletions(const SpreadCode& code, const ErasableMatrix& r) {
    if (code.orientation() != Orientation::PT)
        throw ConfigError("the deletion-tolerant CEC decoder needs a spread in transposed orientation");
    const unsigned k = code.k(), m = code.m();
    if (r.cols() != code.n()) throw DimensionError("observation width must be n = m*k");

    ErasableRrefResult red = rref(r);
    if (red.rank == 0)
        throw UndecodableError(UndecodableError::Reason::EmptyObservation,
                               "observation has rank 0 on its unerased columns");
    if (red.rank > k)
        throw UndecodableError(UndecodableError::Reason::Inconsistent,
                               "observation rank exceeds the code dimension");
    const unsigned deletions = k - red.rank;
    ErasableMatrix rbar = red.r.rows_slice(0, red.rank);

    // reference: lowest-index erasure-free block that is nonzero on the
    // unerased part
    unsigned ref = m;
    std::vector<unsigned> counts = erased_cols_per_block(rbar, k, m);
    for (unsigned i = 0; i < m && ref == m; ++i) {
        if (counts[i] != 0) continue;
        bool nonzero = false;
        for (unsigned row = 0; row < rbar.rows() && !nonzero; ++row)
            for (unsigned c = i * k; c < (i + 1) * k; ++c)
                if (rbar.value(row, c) != 0) { nonzero = true; break; }
        if (nonzero) ref = i;
    }
    if (ref == m)
        throw UndecodableError(UndecodableError::Reason::NoReferenceBlock,
                               "no erasure-free nonzero block");

    GabidulinCode gab(code.ext_ptr(), rbar.exact_block(ref * k, k), Orientation::PT);
    std::vector<MatFq> blocks;
    blocks.reserve(m);
    for (unsigned i = 0; i < m; ++i)
        blocks.push_back(gab.erasure_decode(rbar.block(i * k, k)).word);

    DecodeReport rep = decode_rec(code, MatFq::hcat(blocks));
    rep.reference_block = ref;
    rep.erased_cols_per_block = std::move(counts);
    rep.deletions = deletions;
    return rep;
}

} // namespace rlnc
