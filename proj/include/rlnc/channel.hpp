#pragma once

#include <optional>
#include <variant>

#include "rlnc/linalg.hpp"

namespace rlnc {

// k x n mask over {0, ?}; the unit every capability formula counts.
class ErasurePattern {
public:
    ErasurePattern(unsigned rows, unsigned cols)
        : rows_(rows), cols_(cols), mask_(std::size_t(rows) * cols, 0) {}

    static ErasurePattern zero(unsigned rows, unsigned cols) { return {rows, cols}; }
    // Row-major bit layout: bit r*cols + c. Requires rows*cols <= 64.
    static ErasurePattern from_bits(unsigned rows, unsigned cols, std::uint64_t bits);
    std::uint64_t to_bits() const;

    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }
    bool erased(unsigned r, unsigned c) const { return mask_[r * cols_ + c] != 0; }
    void set(unsigned r, unsigned c, bool e = true) { mask_[r * cols_ + c] = e ? 1 : 0; }

    unsigned weight() const;
    bool row_affected(unsigned r) const;
    bool col_affected(unsigned c) const;
    unsigned affected_row_count() const;
    unsigned affected_col_count() const;
    unsigned affected_cols_in_block(unsigned block, unsigned width) const;
    bool block_untouched(unsigned block, unsigned width) const;

    bool operator==(const ErasurePattern& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && mask_ == o.mask_;
    }

private:
    unsigned rows_, cols_;
    std::vector<std::uint8_t> mask_;
};

// Adds the pattern to an exact matrix under the '?'-algebra (x + ? = ?).
ErasableMatrix add_pattern(const MatFq& m, const ErasurePattern& e);

// Row deletion operator: drops every row containing an erasure.
MatFq rho(const ErasableMatrix& m);
// Column erasure operator: any column containing an erasure becomes all-'?'.
ErasableMatrix gamma(const ErasableMatrix& m);

// REC observation rho(A*U + E); r = number of affected rows of E. The result
// may have zero rows, which decoders reject.
MatFq apply_rec(const MatFq& u, const MatFq& a, const ErasurePattern& e);

// CEC observation gamma(A*U + E).
ErasableMatrix apply_cec(const MatFq& u, const MatFq& a, const ErasurePattern& e);

enum class PlacementKind { Uniform, WorstRec, WorstCec, PerBlock };

struct Placement {
    PlacementKind kind = PlacementKind::Uniform;
    unsigned block_limit = 0;                   // PerBlock: max affected columns per block
    std::optional<unsigned> untouched_block;    // PerBlock: pinned untouched block

    static Placement uniform() { return {PlacementKind::Uniform, 0, {}}; }
    static Placement worst_rec() { return {PlacementKind::WorstRec, 0, {}}; }
    static Placement worst_cec() { return {PlacementKind::WorstCec, 0, {}}; }
    static Placement per_block(unsigned limit, std::optional<unsigned> untouched = {}) {
        return {PlacementKind::PerBlock, limit, untouched};
    }
};

// Seeded pattern sampler. worst_rec spreads `weight` erasures over distinct
// rows, worst_cec over distinct columns; per_block keeps every k-column
// block at or under `block_limit` affected columns and leaves one block
// untouched. Throws ConfigError when the placement cannot be satisfied.
ErasurePattern sample_pattern(unsigned rows, unsigned cols, unsigned weight,
                              const Placement& placement, Rng& rng);

// Pattern files share the matrix text format with entries restricted to
// {0, ?}.
std::string to_text(const ErasurePattern& e, unsigned block = 0);
ErasurePattern parse_pattern(const std::string& text);

enum class ChannelModel { Rec, Cec, CecDeletions, HybridCec };

const char* model_name(ChannelModel m);
ChannelModel parse_model(const std::string& name);

struct ChannelOutcome {
    std::variant<MatFq, ErasableMatrix> observation;
    MatFq a;
    ErasurePattern pattern;
    ChannelModel model;
};

// One pass through the selected channel: REC observations are exact reduced
// matrices, CEC observations are erasable.
ChannelOutcome transmit(const MatFq& word, const MatFq& a, const ErasurePattern& e,
                        ChannelModel model);

} // namespace rlnc
