#include "rlnc/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace rlnc {

namespace {

void require_same_field(const BaseField& a, const BaseField& b) {
    if (!(a == b)) throw FieldError("matrices over different fields");
}

} // namespace

MatFq::MatFq(std::shared_ptr<const BaseField> field, unsigned rows, unsigned cols)
    : f_(std::move(field)), rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {}

MatFq MatFq::zero(std::shared_ptr<const BaseField> field, unsigned rows, unsigned cols) {
    return MatFq(std::move(field), rows, cols);
}

MatFq MatFq::identity(std::shared_ptr<const BaseField> field, unsigned n) {
    MatFq m(std::move(field), n, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatFq MatFq::filled(std::shared_ptr<const BaseField> field, unsigned rows, unsigned cols, felem v) {
    MatFq m(std::move(field), rows, cols);
    std::fill(m.a_.begin(), m.a_.end(), v);
    return m;
}

MatFq MatFq::from_rows(std::shared_ptr<const BaseField> field,
                       std::initializer_list<std::initializer_list<unsigned>> rows) {
    unsigned r = static_cast<unsigned>(rows.size());
    unsigned c = r ? static_cast<unsigned>(rows.begin()->size()) : 0;
    MatFq m(std::move(field), r, c);
    unsigned i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("ragged initializer");
        unsigned j = 0;
        for (unsigned v : row) m.at(i, j++) = static_cast<felem>(v);
        ++i;
    }
    return m;
}

std::vector<felem> MatFq::col(unsigned c) const {
    std::vector<felem> v(rows_);
    for (unsigned r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

MatFq MatFq::operator+(const MatFq& o) const {
    require_same_field(*f_, *o.f_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix addition shape mismatch");
    MatFq m(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_->add(a_[i], o.a_[i]);
    return m;
}

MatFq MatFq::operator-(const MatFq& o) const {
    require_same_field(*f_, *o.f_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix subtraction shape mismatch");
    MatFq m(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_->sub(a_[i], o.a_[i]);
    return m;
}

MatFq MatFq::operator*(const MatFq& o) const {
    require_same_field(*f_, *o.f_);
    if (cols_ != o.rows_) throw DimensionError("matrix product inner dimension mismatch");
    MatFq m(f_, rows_, o.cols_);
    for (unsigned i = 0; i < rows_; ++i) {
        for (unsigned l = 0; l < cols_; ++l) {
            felem a = at(i, l);
            if (a == 0) continue;
            for (unsigned j = 0; j < o.cols_; ++j)
                m.at(i, j) = f_->add(m.at(i, j), f_->mul(a, o.at(l, j)));
        }
    }
    return m;
}

MatFq MatFq::scaled(felem c) const {
    MatFq m(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_->mul(a_[i], c);
    return m;
}

MatFq MatFq::transposed() const {
    MatFq m(f_, cols_, rows_);
    for (unsigned r = 0; r < rows_; ++r)
        for (unsigned c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
}

bool MatFq::operator==(const MatFq& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && *f_ == *o.f_ && a_ == o.a_;
}

bool MatFq::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](felem x) { return x == 0; });
}

bool MatFq::row_is_zero(unsigned r) const {
    for (unsigned c = 0; c < cols_; ++c)
        if (at(r, c) != 0) return false;
    return true;
}

MatFq MatFq::block(unsigned c0, unsigned width) const {
    if (c0 + width > cols_) throw DimensionError("block out of range");
    MatFq m(f_, rows_, width);
    for (unsigned r = 0; r < rows_; ++r)
        for (unsigned c = 0; c < width; ++c) m.at(r, c) = at(r, c0 + c);
    return m;
}

MatFq MatFq::rows_slice(unsigned r0, unsigned count) const {
    if (r0 + count > rows_) throw DimensionError("row slice out of range");
    MatFq m(f_, count, cols_);
    for (unsigned r = 0; r < count; ++r)
        for (unsigned c = 0; c < cols_; ++c) m.at(r, c) = at(r0 + r, c);
    return m;
}

MatFq MatFq::hcat(std::span<const MatFq> parts) {
    if (parts.empty()) throw DimensionError("hcat of nothing");
    unsigned rows = parts[0].rows();
    unsigned cols = 0;
    for (const MatFq& p : parts) {
        if (p.rows() != rows) throw DimensionError("hcat row mismatch");
        cols += p.cols();
    }
    MatFq m(parts[0].field_ptr(), rows, cols);
    unsigned off = 0;
    for (const MatFq& p : parts) {
        for (unsigned r = 0; r < rows; ++r)
            for (unsigned c = 0; c < p.cols(); ++c) m.at(r, off + c) = p.at(r, c);
        off += p.cols();
    }
    return m;
}

MatFq MatFq::vcat(const MatFq& top, const MatFq& bottom) {
    if (top.cols() != bottom.cols()) throw DimensionError("vcat column mismatch");
    require_same_field(top.field(), bottom.field());
    MatFq m(top.field_ptr(), top.rows() + bottom.rows(), top.cols());
    for (unsigned r = 0; r < top.rows(); ++r)
        for (unsigned c = 0; c < top.cols(); ++c) m.at(r, c) = top.at(r, c);
    for (unsigned r = 0; r < bottom.rows(); ++r)
        for (unsigned c = 0; c < top.cols(); ++c) m.at(top.rows() + r, c) = bottom.at(r, c);
    return m;
}

// ---------------------------------------------------------------------------

ErasableMatrix::ErasableMatrix(std::shared_ptr<const BaseField> field, unsigned rows, unsigned cols)
    : f_(std::move(field)), rows_(rows), cols_(cols),
      a_(std::size_t(rows) * cols, 0), e_(std::size_t(rows) * cols, 0) {}

ErasableMatrix::ErasableMatrix(const MatFq& m)
    : ErasableMatrix(m.field_ptr(), m.rows(), m.cols()) {
    for (unsigned r = 0; r < rows_; ++r)
        for (unsigned c = 0; c < cols_; ++c) a_[r * cols_ + c] = m.at(r, c);
}

void ErasableMatrix::set(unsigned r, unsigned c, felem v) {
    a_[r * cols_ + c] = v;
    e_[r * cols_ + c] = 0;
}

void ErasableMatrix::set_erased(unsigned r, unsigned c) {
    a_[r * cols_ + c] = 0;
    e_[r * cols_ + c] = 1;
}

unsigned ErasableMatrix::erased_count() const {
    unsigned n = 0;
    for (std::uint8_t b : e_) n += b;
    return n;
}

bool ErasableMatrix::col_has_erasure(unsigned c) const {
    for (unsigned r = 0; r < rows_; ++r)
        if (erased(r, c)) return true;
    return false;
}

bool ErasableMatrix::col_is_unerased_zero(unsigned c) const {
    for (unsigned r = 0; r < rows_; ++r)
        if (erased(r, c) || value(r, c) != 0) return false;
    return true;
}

bool ErasableMatrix::row_has_erasure(unsigned r) const {
    for (unsigned c = 0; c < cols_; ++c)
        if (erased(r, c)) return true;
    return false;
}

bool ErasableMatrix::row_is_exact_zero(unsigned r) const {
    for (unsigned c = 0; c < cols_; ++c)
        if (!erased(r, c) && value(r, c) != 0) return false;
    return true;
}

ErasableMatrix ErasableMatrix::operator+(const ErasableMatrix& o) const {
    require_same_field(*f_, *o.f_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("erasable addition shape mismatch");
    ErasableMatrix m(f_, rows_, cols_);
    for (unsigned r = 0; r < rows_; ++r)
        for (unsigned c = 0; c < cols_; ++c) {
            if (erased(r, c) || o.erased(r, c)) m.set_erased(r, c);
            else m.set(r, c, f_->add(value(r, c), o.value(r, c)));
        }
    return m;
}

ErasableMatrix ErasableMatrix::operator*(const ErasableMatrix& o) const {
    require_same_field(*f_, *o.f_);
    if (cols_ != o.rows_) throw DimensionError("erasable product inner dimension mismatch");
    ErasableMatrix m(f_, rows_, o.cols_);
    for (unsigned i = 0; i < rows_; ++i) {
        for (unsigned j = 0; j < o.cols_; ++j) {
            felem sum = 0;
            bool qmark = false;
            for (unsigned l = 0; l < cols_; ++l) {
                // a term is exactly zero when either factor is a known zero
                bool a_er = erased(i, l), b_er = o.erased(l, j);
                felem a = value(i, l), b = o.value(l, j);
                if ((!a_er && a == 0) || (!b_er && b == 0)) continue;
                if (a_er || b_er) { qmark = true; continue; }
                sum = f_->add(sum, f_->mul(a, b));
            }
            if (qmark) m.set_erased(i, j);
            else m.set(i, j, sum);
        }
    }
    return m;
}

bool ErasableMatrix::operator==(const ErasableMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(*f_ == *o.f_)) return false;
    for (unsigned r = 0; r < rows_; ++r)
        for (unsigned c = 0; c < cols_; ++c) {
            if (erased(r, c) != o.erased(r, c)) return false;
            if (!erased(r, c) && value(r, c) != o.value(r, c)) return false;
        }
    return true;
}

ErasableMatrix ErasableMatrix::block(unsigned c0, unsigned width) const {
    if (c0 + width > cols_) throw DimensionError("block out of range");
    ErasableMatrix m(f_, rows_, width);
    for (unsigned r = 0; r < rows_; ++r)
        for (unsigned c = 0; c < width; ++c) {
            if (erased(r, c0 + c)) m.set_erased(r, c);
            else m.set(r, c, value(r, c0 + c));
        }
    return m;
}

ErasableMatrix ErasableMatrix::rows_slice(unsigned r0, unsigned count) const {
    if (r0 + count > rows_) throw DimensionError("row slice out of range");
    ErasableMatrix m(f_, count, cols_);
    for (unsigned r = 0; r < count; ++r)
        for (unsigned c = 0; c < cols_; ++c) {
            if (erased(r0 + r, c)) m.set_erased(r, c);
            else m.set(r, c, value(r0 + r, c));
        }
    return m;
}

MatFq ErasableMatrix::exact() const {
    MatFq m(f_, rows_, cols_);
    for (unsigned r = 0; r < rows_; ++r)
        for (unsigned c = 0; c < cols_; ++c) {
            if (erased(r, c)) throw FieldError("erased cell in exact() extraction");
            m.at(r, c) = value(r, c);
        }
    return m;
}

MatFq ErasableMatrix::exact_block(unsigned c0, unsigned width) const {
    return block(c0, width).exact();
}

ErasableMatrix operator*(const MatFq& a, const ErasableMatrix& b) {
    return ErasableMatrix(a) * b;
}

ErasableMatrix operator*(const ErasableMatrix& a, const MatFq& b) {
    return a * ErasableMatrix(b);
}

// ---------------------------------------------------------------------------

RrefResult rref(const MatFq& m) {
    RrefResult res;
    res.r = m;
    res.transform = MatFq::identity(m.field_ptr(), m.rows());
    const BaseField& f = m.field();
    MatFq& a = res.r;
    MatFq& t = res.transform;
    unsigned pr = 0; // next pivot row
    for (unsigned pc = 0; pc < m.cols() && pr < m.rows(); ++pc) {
        unsigned sel = pr;
        while (sel < m.rows() && a.at(sel, pc) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != pr) {
            for (unsigned c = 0; c < m.cols(); ++c) std::swap(a.at(sel, c), a.at(pr, c));
            for (unsigned c = 0; c < m.rows(); ++c) std::swap(t.at(sel, c), t.at(pr, c));
        }
        felem piv_inv = f.inv(a.at(pr, pc));
        if (piv_inv != 1) {
            for (unsigned c = 0; c < m.cols(); ++c) a.at(pr, c) = f.mul(a.at(pr, c), piv_inv);
            for (unsigned c = 0; c < m.rows(); ++c) t.at(pr, c) = f.mul(t.at(pr, c), piv_inv);
        }
        for (unsigned r = 0; r < m.rows(); ++r) {
            if (r == pr) continue;
            felem c0 = a.at(r, pc);
            if (c0 == 0) continue;
            for (unsigned c = 0; c < m.cols(); ++c)
                a.at(r, c) = f.sub(a.at(r, c), f.mul(c0, a.at(pr, c)));
            for (unsigned c = 0; c < m.rows(); ++c)
                t.at(r, c) = f.sub(t.at(r, c), f.mul(c0, t.at(pr, c)));
        }
        res.pivots.push_back(pc);
        ++pr;
    }
    res.rank = pr;
    return res;
}

ErasableRrefResult rref(const ErasableMatrix& m) {
    ErasableRrefResult res;
    res.r = m;
    const BaseField& f = m.field();
    ErasableMatrix& a = res.r;
    const unsigned rows = m.rows(), cols = m.cols();

    auto swap_rows = [&](unsigned r1, unsigned r2) {
        for (unsigned c = 0; c < cols; ++c) {
            bool e1 = a.erased(r1, c), e2 = a.erased(r2, c);
            felem v1 = a.value(r1, c), v2 = a.value(r2, c);
            if (e2) a.set_erased(r1, c); else a.set(r1, c, v2);
            if (e1) a.set_erased(r2, c); else a.set(r2, c, v1);
        }
    };
    auto scale_row = [&](unsigned r, felem s) { // s != 0; '?' stays '?'
        for (unsigned c = 0; c < cols; ++c)
            if (!a.erased(r, c)) a.set(r, c, f.mul(a.value(r, c), s));
    };
    auto add_scaled = [&](unsigned dst, unsigned src, felem s) { // dst += s*src
        if (s == 0) return;
        for (unsigned c = 0; c < cols; ++c) {
            if (a.erased(dst, c)) continue; // ? + anything = ?
            if (a.erased(src, c)) { a.set_erased(dst, c); continue; }
            a.set(dst, c, f.add(a.value(dst, c), f.mul(s, a.value(src, c))));
        }
    };

    unsigned pr = 0;
    for (unsigned pc = 0; pc < cols && pr < rows; ++pc) {
        unsigned sel = rows;
        for (unsigned r = pr; r < rows; ++r) {
            if (!a.erased(r, pc) && a.value(r, pc) != 0) { sel = r; break; }
        }
        if (sel == rows) continue; // no usable pivot in this column
        if (sel != pr) swap_rows(sel, pr);
        scale_row(pr, f.inv(a.value(pr, pc)));
        for (unsigned r = 0; r < rows; ++r) {
            if (r == pr) continue;
            if (a.erased(r, pc)) continue;
            felem c0 = a.value(r, pc);
            if (c0 == 0) continue;
            add_scaled(r, pr, f.neg(c0));
        }
        res.pivots.push_back(pc);
        ++pr;
    }
    res.rank = pr;
    return res;
}

unsigned rank(const MatFq& m) { return rref(m).rank; }

MatFq invert(const MatFq& m) {
    if (m.rows() != m.cols()) throw DimensionError("inversion of a non-square matrix");
    RrefResult r = rref(m);
    if (r.rank != m.rows()) throw SingularMatrixError("matrix is singular");
    return r.transform;
}

bool row_space_equal(const MatFq& a, const MatFq& b) {
    if (a.cols() != b.cols()) return false;
    RrefResult ra = rref(a), rb = rref(b);
    if (ra.rank != rb.rank) return false;
    return ra.r.rows_slice(0, ra.rank) == rb.r.rows_slice(0, rb.rank);
}

// ---------------------------------------------------------------------------

Subspace::Subspace(std::shared_ptr<const BaseField> field, unsigned ambient)
    : n_(ambient), basis_(MatFq::zero(std::move(field), 0, ambient)) {}

Subspace::Subspace(const MatFq& basis) : n_(basis.cols()) {
    RrefResult r = rref(basis);
    basis_ = r.r.rows_slice(0, r.rank);
}

bool Subspace::operator==(const Subspace& o) const {
    return n_ == o.n_ && basis_ == o.basis_;
}

unsigned subspace_distance(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient()) throw DimensionError("subspace distance needs equal ambient");
    if (u.dim() == 0) return v.dim();
    if (v.dim() == 0) return u.dim();
    MatFq stacked = MatFq::vcat(u.basis(), v.basis());
    return 2 * rank(stacked) - u.dim() - v.dim();
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

Rng Rng::for_trial(std::uint64_t master_seed, std::uint64_t trial) {
    return Rng(splitmix64(master_seed ^ splitmix64(trial)));
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw Error("Rng::below(0)");
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    for (;;) {
        std::uint64_t v = g_();
        if (v < limit) return v % n;
    }
}

MatFq random_full_rank(std::shared_ptr<const BaseField> field, unsigned n, Rng& rng) {
    for (;;) {
        MatFq m(field, n, n);
        for (unsigned r = 0; r < n; ++r)
            for (unsigned c = 0; c < n; ++c) m.at(r, c) = rng.element(*field);
        if (rank(m) == n) return m;
    }
}

MatFq random_matrix(std::shared_ptr<const BaseField> field, unsigned rows, unsigned cols,
                    unsigned target_rank, Rng& rng) {
    if (target_rank > std::min(rows, cols)) throw DimensionError("target rank too large");
    if (target_rank == std::min(rows, cols)) {
        for (;;) {
            MatFq m(field, rows, cols);
            for (unsigned r = 0; r < rows; ++r)
                for (unsigned c = 0; c < cols; ++c) m.at(r, c) = rng.element(*field);
            if (rank(m) == target_rank) return m;
        }
    }
    if (target_rank == 0) return MatFq::zero(field, rows, cols);
    MatFq l = random_full_rank(field, rows, rng);
    MatFq r = random_full_rank(field, cols, rng);
    MatFq j = MatFq::zero(field, rows, cols);
    for (unsigned i = 0; i < target_rank; ++i) j.at(i, i) = 1;
    return l * j * r;
}

namespace {

std::vector<MatFq> scan_rank(const std::shared_ptr<const BaseField>& field, unsigned k,
                             unsigned target, std::uint64_t budget) {
    const unsigned q = field->order();
    std::uint64_t total = 1;
    for (unsigned i = 0; i < k * k; ++i) {
        total *= q;
        if (total > budget)
            throw BudgetExceededError("matrix enumeration needs q^(k^2) = more than the budget");
    }
    std::vector<MatFq> out;
    MatFq m(field, k, k);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t v = t;
        for (unsigned r = 0; r < k; ++r)
            for (unsigned c = 0; c < k; ++c) { m.at(r, c) = static_cast<felem>(v % q); v /= q; }
        if (rank(m) == target) out.push_back(m);
    }
    return out;
}

} // namespace

const std::vector<MatFq>& general_linear_group(const std::shared_ptr<const BaseField>& field,
                                               unsigned k, std::uint64_t budget) {
    static std::map<std::pair<unsigned, unsigned>, std::vector<MatFq>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(field->order(), k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, scan_rank(field, k, k, budget)).first->second;
}

std::vector<MatFq> matrices_of_rank(const std::shared_ptr<const BaseField>& field, unsigned k,
                                    unsigned rank_target, std::uint64_t budget) {
    return scan_rank(field, k, rank_target, budget);
}

// ---------------------------------------------------------------------------

namespace {

void append_row_text(std::ostringstream& os, unsigned cols, unsigned block,
                     const std::function<std::string(unsigned)>& cell) {
    for (unsigned c = 0; c < cols; ++c) {
        if (c) {
            os << ' ';
            if (block && c % block == 0) os << "| ";
        }
        os << cell(c);
    }
    os << '\n';
}

struct ParsedCells {
    unsigned rows = 0, cols = 0;
    std::vector<std::string> cells; // row-major tokens
};

ParsedCells tokenize_matrix(const std::string& text) {
    ParsedCells out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t)
            if (t != "|") toks.push_back(t);
        if (toks.empty()) continue;
        if (out.rows == 0) out.cols = static_cast<unsigned>(toks.size());
        else if (toks.size() != out.cols) throw ParseError("ragged matrix text");
        out.cells.insert(out.cells.end(), toks.begin(), toks.end());
        ++out.rows;
    }
    if (out.rows == 0) throw ParseError("empty matrix text");
    return out;
}

felem parse_cell(const BaseField& f, const std::string& t) {
    for (char c : t)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("bad matrix entry '" + t + "'");
    unsigned long v = std::stoul(t);
    if (v >= f.order()) throw ParseError("entry " + t + " out of range for F_" + std::to_string(f.order()));
    return static_cast<felem>(v);
}

} // namespace

std::string to_text(const MatFq& m, unsigned block) {
    std::ostringstream os;
    for (unsigned r = 0; r < m.rows(); ++r)
        append_row_text(os, m.cols(), block,
                        [&](unsigned c) { return std::to_string(m.at(r, c)); });
    return os.str();
}

std::string to_text(const ErasableMatrix& m, unsigned block) {
    std::ostringstream os;
    for (unsigned r = 0; r < m.rows(); ++r)
        append_row_text(os, m.cols(), block, [&](unsigned c) {
            return m.erased(r, c) ? std::string("?") : std::to_string(m.value(r, c));
        });
    return os.str();
}

MatFq parse_matrix(const std::shared_ptr<const BaseField>& field, const std::string& text) {
    ParsedCells p = tokenize_matrix(text);
    MatFq m(field, p.rows, p.cols);
    for (unsigned r = 0; r < p.rows; ++r)
        for (unsigned c = 0; c < p.cols; ++c) {
            const std::string& t = p.cells[r * p.cols + c];
            if (t == "?") throw ParseError("erasure symbol in an exact matrix");
            m.at(r, c) = parse_cell(*field, t);
        }
    return m;
}

ErasableMatrix parse_erasable(const std::shared_ptr<const BaseField>& field, const std::string& text) {
    ParsedCells p = tokenize_matrix(text);
    ErasableMatrix m(field, p.rows, p.cols);
    for (unsigned r = 0; r < p.rows; ++r)
        for (unsigned c = 0; c < p.cols; ++c) {
            const std::string& t = p.cells[r * p.cols + c];
            if (t == "?") m.set_erased(r, c);
            else m.set(r, c, parse_cell(*field, t));
        }
    return m;
}

} // namespace rlnc
