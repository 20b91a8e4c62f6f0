#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rlnc/gf.hpp"

namespace rlnc {

// Dense matrix over a base field. Value semantics; all operations pure.
class MatFq {
public:
    MatFq() = default;
    MatFq(std::shared_ptr<const BaseField> field, unsigned rows, unsigned cols);

    static MatFq zero(std::shared_ptr<const BaseField> field, unsigned rows, unsigned cols);
    static MatFq identity(std::shared_ptr<const BaseField> field, unsigned n);
    static MatFq filled(std::shared_ptr<const BaseField> field, unsigned rows, unsigned cols, felem v);
    static MatFq from_rows(std::shared_ptr<const BaseField> field,
                           std::initializer_list<std::initializer_list<unsigned>> rows);

    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }
    const BaseField& field() const { return *f_; }
    const std::shared_ptr<const BaseField>& field_ptr() const { return f_; }

    felem at(unsigned r, unsigned c) const { return a_[r * cols_ + c]; }
    felem& at(unsigned r, unsigned c) { return a_[r * cols_ + c]; }

    std::span<const felem> row(unsigned r) const { return {a_.data() + r * cols_, cols_}; }
    std::vector<felem> col(unsigned c) const;

    MatFq operator+(const MatFq& o) const;
    MatFq operator-(const MatFq& o) const;
    MatFq operator*(const MatFq& o) const;
    MatFq scaled(felem c) const;
    MatFq transposed() const;
    bool operator==(const MatFq& o) const;
    bool operator!=(const MatFq& o) const { return !(*this == o); }

    bool is_zero() const;
    bool row_is_zero(unsigned r) const;

    // columns [c0, c0+width)
    MatFq block(unsigned c0, unsigned width) const;
    MatFq rows_slice(unsigned r0, unsigned count) const;
    // horizontal concatenation
    static MatFq hcat(std::span<const MatFq> parts);
    //  vertical concatenation
    static MatFq vcat(const MatFq& top, const MatFq& bottom);

private:
    std::shared_ptr<const BaseField> f_;
    unsigned rows_ = 0, cols_ = 0;
    std::vector<felem> a_;
};

// Matrix over F_q united with the erasure symbol '?'. The '?' algebra:
// 0*? = 0, x*? = ? (x != 0), y+? = ?, ?+? = ? = ?*?. Never invertible;
// decoders must extract exact submatrices first.
class ErasableMatrix {
public:
    ErasableMatrix() = default;
    ErasableMatrix(std::shared_ptr<const BaseField> field, unsigned rows, unsigned cols);
    explicit ErasableMatrix(const MatFq& m);

    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }
    const BaseField& field() const { return *f_; }
    const std::shared_ptr<const BaseField>& field_ptr() const { return f_; }

    bool erased(unsigned r, unsigned c) const { return e_[r * cols_ + c] != 0; }
    felem value(unsigned r, unsigned c) const { return a_[r * cols_ + c]; } // valid iff !erased
    void set(unsigned r, unsigned c, felem v);
    void set_erased(unsigned r, unsigned c);

    unsigned erased_count() const;
    bool col_has_erasure(unsigned c) const;
    bool col_is_unerased_zero(unsigned c) const; // fully unerased and all zero
    bool row_has_erasure(unsigned r) const;
    bool row_is_exact_zero(unsigned r) const;    // all unerased entries zero

    ErasableMatrix operator+(const ErasableMatrix& o) const;
    ErasableMatrix operator*(const ErasableMatrix& o) const;
    bool operator==(const ErasableMatrix& o) const; // erased cells compare by position

    ErasableMatrix block(unsigned c0, unsigned width) const;
    ErasableMatrix rows_slice(unsigned r0, unsigned count) const;

    // Exact content of a fully unerased region; throws if any cell is erased.
    MatFq exact() const;
    MatFq exact_block(unsigned c0, unsigned width) const;

private:
    std::shared_ptr<const BaseField> f_;
    unsigned rows_ = 0, cols_ = 0;
    std::vector<felem> a_;
    std::vector<std::uint8_t> e_;
};

ErasableMatrix operator*(const MatFq& a, const ErasableMatrix& b);
ErasableMatrix operator*(const ErasableMatrix& a, const MatFq& b);

struct RrefResult {
    MatFq r;
    unsigned rank = 0;
    MatFq transform;              // transform * input == r
    std::vector<unsigned> pivots; // pivot column per pivot row
};

// Deterministic reduced row echelon form: leftmost pivot column, topmost
// available row.
RrefResult rref(const MatFq& m);

struct ErasableRrefResult {
    ErasableMatrix r;
    unsigned rank = 0; // rank of the unerased part
    std::vector<unsigned> pivots;
};

// Row reduction on the unerased columns, '?' cells carried along by the
// erasure algebra. Rows that are zero on every unerased entry sink to the
// bottom.
ErasableRrefResult rref(const ErasableMatrix& m);

unsigned rank(const MatFq& m);
MatFq invert(const MatFq& m); // DimensionError if not square, SingularMatrixError if singular
bool row_space_equal(const MatFq& a, const MatFq& b);

// Subspace of F_q^n held by its canonical RREF basis with zero rows removed.
class Subspace {
public:
    Subspace(std::shared_ptr<const BaseField> field, unsigned ambient); // zero space
    explicit Subspace(const MatFq& basis);                              // canonicalizes

    unsigned ambient() const { return n_; }
    unsigned dim() const { return basis_.rows(); }
    const MatFq& basis() const { return basis_; }

    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    unsigned n_;
    MatFq basis_;
};

// dim(U+V) - dim(U cap V) = 2*rank(stacked) - dim U - dim V
unsigned subspace_distance(const Subspace& u, const Subspace& v);

// Deterministic RNG for reproducible experiments. Raw mt19937_64 output is
// standardized, and bounded draws use rejection, so streams are identical
// across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    // Independent per-trial stream derived from a master seed by counter.
    static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial);

    std::uint64_t next() { return g_(); }
    std::uint64_t below(std::uint64_t n); // uniform in [0, n)
    felem element(const BaseField& f) { return static_cast<felem>(below(f.order())); }
    felem nonzero_element(const BaseField& f) { return static_cast<felem>(1 + below(f.order() - 1)); }

private:
    std::mt19937_64 g_;
};

// Uniform full-rank sampling by rejection; lower target ranks as a product
// of full-rank factors around a rank-`target` projector.
MatFq random_matrix(std::shared_ptr<const BaseField> field, unsigned rows, unsigned cols,
                    unsigned target_rank, Rng& rng);
MatFq random_full_rank(std::shared_ptr<const BaseField> field, unsigned n, Rng& rng);

// All k x k matrices over the field with the given rank; the invertible ones
// are cached per (field, k). Guarded by `budget` on q^(k^2).
const std::vector<MatFq>& general_linear_group(const std::shared_ptr<const BaseField>& field,
                                               unsigned k, std::uint64_t budget = 1u << 21);
std::vector<MatFq> matrices_of_rank(const std::shared_ptr<const BaseField>& field, unsigned k,
                                    unsigned rank, std::uint64_t budget = 1u << 21);

// Text format: one row per line, entries as base-field indices separated by
// spaces, '?' marks an erasure, '|' separators are ignored on parse and
// re-emitted between `block` columns on print (0 = no separators).
std::string to_text(const MatFq& m, unsigned block = 0);
std::string to_text(const ErasableMatrix& m, unsigned block = 0);
MatFq parse_matrix(const std::shared_ptr<const BaseField>& field, const std::string& text);
ErasableMatrix parse_erasable(const std::shared_ptr<const BaseField>& field, const std::string& text);

} // namespace rlnc
