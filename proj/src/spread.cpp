#include "rlnc/spread.hpp"

#include <sstream>

#include "detail/strings.hpp"

namespace rlnc {

GrassmannPoint::GrassmannPoint(std::vector<ExtFieldElem> coords) : u_(std::move(coords)) {
    if (u_.empty()) throw FieldError("empty Grassmann point");
    unsigned lead = size();
    for (unsigned i = 0; i < size(); ++i)
        if (!u_[i].is_zero()) { lead = i; break; }
    if (lead == size()) throw FieldError("zero vector is not a Grassmann point");
    if (!u_[lead].is_one()) {
        ExtFieldElem inv = u_[lead].inverse();
        for (auto& c : u_) c = c * inv;
    }
}

unsigned GrassmannPoint::leading_index() const {
    for (unsigned i = 0; i < size(); ++i)
        if (!u_[i].is_zero()) return i;
    return size(); // unreachable, the constructor rejects zero
}

std::string GrassmannPoint::to_string() const {
    std::ostringstream os;
    for (unsigned i = 0; i < size(); ++i) {
        if (i) os << ',';
        os << u_[i].to_tuple_string();
    }
    return os.str();
}

SpreadCode::SpreadCode(std::shared_ptr<const ExtField> ext, unsigned m, Orientation orient)
    : ext_(std::move(ext)), m_(m), orient_(orient), p_(companion(ext_->modulus())) {
    if (m_ < 1) throw ConfigError("spread needs m >= 1");
}

std::uint64_t SpreadCode::size() const {
    const std::uint64_t qk = ext_->order_u64();
    std::uint64_t total = 1, acc = 0;
    for (unsigned i = 0; i < m_; ++i) {
        if (acc > ~std::uint64_t(0) - total)
            throw BudgetExceededError("spread size does not fit in 64 bits");
        acc += total; // sum_{i<m} q^{ki}
        if (i + 1 < m_) {
            if (total > ~std::uint64_t(0) / qk)
                throw BudgetExceededError("spread size does not fit in 64 bits");
            total *= qk;
        }
    }
    return acc;
}

CodewordMatrix SpreadCode::encode(const GrassmannPoint& u) const {
    if (u.size() != m_) throw DimensionError("Grassmann point has wrong length");
    std::vector<MatFq> blocks;
    blocks.reserve(m_);
    for (unsigned i = 0; i < m_; ++i) blocks.push_back(phi(u.at(i), orient_));
    return MatFq::hcat(blocks);
}

GrassmannPoint SpreadCode::identify(std::span<const felem> v) const {
    if (orient_ != Orientation::PT)
        throw ConfigError("identify is row-wise well-defined only for the transposed orientation");
    if (v.size() != n()) throw DimensionError("vector length must be n = m*k");
    const unsigned kk = k();
    std::vector<ExtFieldElem> coords;
    coords.reserve(m_);
    for (unsigned i = 0; i < m_; ++i)
        coords.push_back(psi(ext_, v.subspan(std::size_t(i) * kk, kk)));
    return GrassmannPoint(std::move(coords)); // throws on the zero vector
}

void SpreadCode::for_each_codeword(
    const std::function<void(const GrassmannPoint&, const CodewordMatrix&)>& fn,
    std::uint64_t budget) const {
    if (size() > budget)
        throw BudgetExceededError("spread enumeration of " + std::to_string(size()) +
                                  " codewords exceeds budget " + std::to_string(budget));
    const std::uint64_t qk = ext_->order_u64();
    // Lexicographic order of normalized index tuples: the all-but-last-zero
    // point (0,...,0,1) sorts first, leading position descending.
    for (unsigned lead = m_; lead-- > 0;) {
        const unsigned free = m_ - lead - 1;
        std::uint64_t count = 1;
        for (unsigned i = 0; i < free; ++i) count *= qk;
        for (std::uint64_t t = 0; t < count; ++t) {
            std::vector<ExtFieldElem> coords;
            coords.reserve(m_);
            for (unsigned i = 0; i < lead; ++i) coords.push_back(ext_->zero());
            coords.push_back(ext_->one());
            // u_{lead+1} is the most significant digit of t
            std::uint64_t rem = t;
            std::vector<ExtFieldElem> tail(free, ext_->zero());
            for (unsigned i = free; i-- > 0;) {
                // digit for position lead+1+(free-1-i) -> extract MSB first
                std::uint64_t div = 1;
                for (unsigned j = 0; j < i; ++j) div *= qk;
                tail[free - 1 - i] = ext_->from_index(rem / div);
                rem %= div;
            }
            for (auto& e : tail) coords.push_back(std::move(e));
            GrassmannPoint u(std::move(coords));
            fn(u, encode(u));
        }
    }
}

std::vector<GrassmannPoint> SpreadCode::enumerate_points(std::uint64_t budget) const {
    std::vector<GrassmannPoint> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each_codeword([&](const GrassmannPoint& u, const CodewordMatrix&) { out.push_back(u); },
                      budget);
    return out;
}

GrassmannPoint SpreadCode::random_point(Rng& rng) const {
    const BaseField& f = ext_->base();
    for (;;) {
        std::vector<ExtFieldElem> coords;
        coords.reserve(m_);
        bool nonzero = false;
        for (unsigned i = 0; i < m_; ++i) {
            std::vector<felem> c(k());
            for (auto& x : c) x = rng.element(f);
            ExtFieldElem e = ext_->element(std::move(c));
            nonzero = nonzero || !e.is_zero();
            coords.push_back(std::move(e));
        }
        if (nonzero) return GrassmannPoint(std::move(coords));
    }
}

bool SpreadCode::is_codeword_matrix(const MatFq& m) const {
    if (m.rows() != k() || m.cols() != n()) return false;
    unsigned lead = m_;
    for (unsigned i = 0; i < m_; ++i) {
        MatFq b = m.block(i * k(), k());
        if (b.is_zero()) continue;
        if (lead == m_) {
            // first nonzero block must be the identity
            if (!(b == MatFq::identity(field_ptr(), k()))) return false;
            lead = i;
            continue;
        }
        // later blocks must be phi images in the right orientation
        if (!(phi(phi_inv(ext_, b, orient_), orient_) == b)) return false;
    }
    return lead != m_;
}

std::string SpreadCode::spec_string() const {
    std::ostringstream os;
    os << "spread:q=" << q() << ",k=" << k() << ",m=" << m_
       << ",p=" << ext_->modulus().to_string()
       << ",orient=" << (orient_ == Orientation::PT ? 'T' : 'P');
    return os.str();
}

SpreadCode parse_spread_spec(const std::string& spec) {
    std::string body = detail::trim(spec);
    if (body.rfind("spread:", 0) == 0) body = body.substr(7);
    unsigned q = 0, k = 0, m = 0;
    std::string ptext, orient;
    for (auto& [key, val] : detail::parse_kv(body)) {
        if (key == "q") q = static_cast<unsigned>(detail::parse_uint(val, "q"));
        else if (key == "k") k = static_cast<unsigned>(detail::parse_uint(val, "k"));
        else if (key == "m") m = static_cast<unsigned>(detail::parse_uint(val, "m"));
        else if (key == "p") ptext = val;
        else if (key == "orient") orient = val;
        else throw ConfigError("unknown spread spec key '" + key + "'");
    }
    if (!q || !k || !m) throw ConfigError("spread spec needs q, k and m");
    auto base = BaseField::make_order(q);
    std::shared_ptr<const ExtField> ext;
    if (ptext.empty()) {
        ext = ExtField::make(base, k);
    } else {
        MonicPoly p = parse_poly(base, ptext);
        if (p.degree() != k)
            throw ConfigError("polynomial degree does not match k in spread spec");
        ext = ExtField::make(std::move(p));
    }
    Orientation o = Orientation::P;
    if (!orient.empty()) {
        if (orient == "T" || orient == "t" || orient == "PT") o = Orientation::PT;
        else if (orient == "P" || orient == "p") o = Orientation::P;
        else throw ConfigError("orient must be P or T");
    }
    return SpreadCode(std::move(ext), m, o);
}

} // namespace rlnc
