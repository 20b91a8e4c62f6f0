#include "rlnc/channel.hpp"

#include <sstream>

namespace rlnc {

ErasurePattern ErasurePattern::from_bits(unsigned rows, unsigned cols, std::uint64_t bits) {
    if (std::uint64_t(rows) * cols > 64) throw DimensionError("pattern too large for 64-bit mask");
    ErasurePattern e(rows, cols);
    for (unsigned r = 0; r < rows; ++r)
        for (unsigned c = 0; c < cols; ++c)
            if (bits >> (std::uint64_t(r) * cols + c) & 1) e.set(r, c);
    return e;
}

std::uint64_t ErasurePattern::to_bits() const {
    if (std::uint64_t(rows_) * cols_ > 64) throw DimensionError("pattern too large for 64-bit mask");
    std::uint64_t bits = 0;
    for (unsigned r = 0; r < rows_; ++r)
        for (unsigned c = 0; c < cols_; ++c)
            if (erased(r, c)) bits |= std::uint64_t(1) << (std::uint64_t(r) * cols_ + c);
    return bits;
}

unsigned ErasurePattern::weight() const {
    unsigned w = 0;
    for (std::uint8_t b : mask_) w += b;
    return w;
}

bool ErasurePattern::row_affected(unsigned r) const {
    for (unsigned c = 0; c < cols_; ++c)
        if (erased(r, c)) return true;
    return false;
}

bool ErasurePattern::col_affected(unsigned c) const {
    for (unsigned r = 0; r < rows_; ++r)
        if (erased(r, c)) return true;
    return false;
}

unsigned ErasurePattern::affected_row_count() const {
    unsigned n = 0;
    for (unsigned r = 0; r < rows_; ++r) n += row_affected(r);
    return n;
}

unsigned ErasurePattern::affected_col_count() const {
    unsigned n = 0;
    for (unsigned c = 0; c < cols_; ++c) n += col_affected(c);
    return n;
}

unsigned ErasurePattern::affected_cols_in_block(unsigned block, unsigned width) const {
    unsigned n = 0;
    for (unsigned c = block * width; c < (block + 1) * width; ++c) n += col_affected(c);
    return n;
}

bool ErasurePattern::block_untouched(unsigned block, unsigned width) const {
    return affected_cols_in_block(block, width) == 0;
}

ErasableMatrix add_pattern(const MatFq& m, const ErasurePattern& e) {
    if (m.rows() != e.rows() || m.cols() != e.cols())
        throw DimensionError("pattern shape does not match the matrix");
    ErasableMatrix out(m);
    for (unsigned r = 0; r < m.rows(); ++r)
        for (unsigned c = 0; c < m.cols(); ++c)
            if (e.erased(r, c)) out.set_erased(r, c);
    return out;
}

MatFq rho(const ErasableMatrix& m) {
    std::vector<unsigned> keep;
    for (unsigned r = 0; r < m.rows(); ++r)
        if (!m.row_has_erasure(r)) keep.push_back(r);
    MatFq out(m.field_ptr(), static_cast<unsigned>(keep.size()), m.cols());
    for (unsigned i = 0; i < keep.size(); ++i)
        for (unsigned c = 0; c < m.cols(); ++c) out.at(i, c) = m.value(keep[i], c);
    return out;
}

ErasableMatrix gamma(const ErasableMatrix& m) {
    ErasableMatrix out = m;
    for (unsigned c = 0; c < m.cols(); ++c) {
        if (!m.col_has_erasure(c)) continue;
        for (unsigned r = 0; r < m.rows(); ++r) out.set_erased(r, c);
    }
    return out;
}

MatFq apply_rec(const MatFq& u, const MatFq& a, const ErasurePattern& e) {
    if (a.rows() != u.rows() || a.cols() != u.rows())
        throw DimensionError("channel matrix must be k x k");
    return rho(add_pattern(a * u, e));
}

ErasableMatrix apply_cec(const MatFq& u, const MatFq& a, const ErasurePattern& e) {
    if (a.rows() != u.rows() || a.cols() != u.rows())
        throw DimensionError("channel matrix must be k x k");
    return gamma(add_pattern(a * u, e));
}

namespace {

// `count` distinct values below `n`, by rejection; n is small everywhere.
std::vector<unsigned> distinct_below(unsigned n, unsigned count, Rng& rng) {
    std::vector<std::uint8_t> used(n, 0);
    std::vector<unsigned> out;
    out.reserve(count);
    while (out.size() < count) {
        unsigned v = static_cast<unsigned>(rng.below(n));
        if (used[v]) continue;
        used[v] = 1;
        out.push_back(v);
    }
    return out;
}

} // namespace

ErasurePattern sample_pattern(unsigned rows, unsigned cols, unsigned weight,
                              const Placement& placement, Rng& rng) {
    ErasurePattern e(rows, cols);
    const std::uint64_t cells = std::uint64_t(rows) * cols;
    switch (placement.kind) {
    case PlacementKind::Uniform: {
        if (weight > cells) throw ConfigError("weight exceeds the number of cells");
        std::vector<std::uint8_t> used(cells, 0);
        unsigned placed = 0;
        while (placed < weight) {
            std::uint64_t v = rng.below(cells);
            if (used[v]) continue;
            used[v] = 1;
            e.set(static_cast<unsigned>(v / cols), static_cast<unsigned>(v % cols));
            ++placed;
        }
        return e;
    }
    case PlacementKind::WorstRec: {
        if (weight > rows)
            throw ConfigError("worst_rec placement needs weight <= k distinct rows");
        for (unsigned r : distinct_below(rows, weight, rng))
            e.set(r, static_cast<unsigned>(rng.below(cols)));
        return e;
    }
    case PlacementKind::WorstCec: {
        if (weight > cols)
            throw ConfigError("worst_cec placement needs weight <= n distinct columns");
        for (unsigned c : distinct_below(cols, weight, rng))
            e.set(static_cast<unsigned>(rng.below(rows)), c);
        return e;
    }
    case PlacementKind::PerBlock: {
        const unsigned k = rows; // block width equals the code dimension
        if (cols % k != 0) throw ConfigError("per_block placement needs k | n");
        const unsigned m = cols / k;
        if (m < 1) throw ConfigError("per_block placement needs at least one block");
        unsigned untouched = placement.untouched_block
                                 ? *placement.untouched_block
                                 : static_cast<unsigned>(rng.below(m));
        if (untouched >= m) throw ConfigError("untouched block index out of range");
        const std::uint64_t capacity =
            std::uint64_t(m - 1) * std::min(placement.block_limit, k) * rows;
        if (weight > capacity)
            throw ConfigError("per_block placement cannot hold " + std::to_string(weight) +
                              " erasures with limit " + std::to_string(placement.block_limit));
        std::vector<unsigned> block_cols(m, 0);
        unsigned placed = 0;
        while (placed < weight) {
            unsigned r = static_cast<unsigned>(rng.below(rows));
            unsigned c = static_cast<unsigned>(rng.below(cols));
            unsigned b = c / k;
            if (b == untouched) continue;
            if (e.erased(r, c)) continue;
            bool col_new = !e.col_affected(c);
            if (col_new && block_cols[b] >= placement.block_limit) continue;
            e.set(r, c);
            if (col_new) ++block_cols[b];
            ++placed;
        }
        return e;
    }
    }
    throw ConfigError("unknown placement");
}

std::string to_text(const ErasurePattern& e, unsigned block) {
    std::ostringstream os;
    for (unsigned r = 0; r < e.rows(); ++r) {
        for (unsigned c = 0; c < e.cols(); ++c) {
            if (c) {
                os << ' ';
                if (block && c % block == 0) os << "| ";
            }
            os << (e.erased(r, c) ? '?' : '0');
        }
        os << '\n';
    }
    return os.str();
}

ErasurePattern parse_pattern(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::vector<bool>> rows;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<bool> row;
        std::string tok;
        while (ls >> tok) {
            if (tok == "|") continue;
            if (tok == "?") row.push_back(true);
            else if (tok == "0") row.push_back(false);
            else throw ParseError("pattern entries must be 0 or ?, got '" + tok + "'");
        }
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("ragged pattern text");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty pattern text");
    ErasurePattern e(static_cast<unsigned>(rows.size()), static_cast<unsigned>(rows[0].size()));
    for (unsigned r = 0; r < e.rows(); ++r)
        for (unsigned c = 0; c < e.cols(); ++c)
            if (rows[r][c]) e.set(r, c);
    return e;
}

ChannelOutcome transmit(const MatFq& word, const MatFq& a, const ErasurePattern& e,
                        ChannelModel model) {
    if (model == ChannelModel::Rec) return {apply_rec(word, a, e), a, e, model};
    return {apply_cec(word, a, e), a, e, model};
}

const char* model_name(ChannelModel m) {
    switch (m) {
    case ChannelModel::Rec: return "rec";
    case ChannelModel::Cec: return "cec";
    case ChannelModel::CecDeletions: return "cec-del";
    case ChannelModel::HybridCec: return "hybrid-cec";
    }
    return "?";
}

ChannelModel parse_model(const std::string& name) {
    if (name == "rec") return ChannelModel::Rec;
    if (name == "cec") return ChannelModel::Cec;
    if (name == "cec-del") return ChannelModel::CecDeletions;
    if (name == "hybrid-cec") return ChannelModel::HybridCec;
    throw ConfigError("unknown channel model '" + name + "' (rec, cec, cec-del, hybrid-cec)");
}

} // namespace rlnc
