#include "rlnc/hybrid.hpp"

#include <sstream>

#include "detail/polyarith.hpp"
#include "detail/strings.hpp"

namespace rlnc {

HybridCode::HybridCode(std::shared_ptr<const BaseField> f, unsigned n, unsigned np, unsigned k)
    : f_(std::move(f)), n_(n), np_(np), k_(k), g_(f_, np, n) {
    for (unsigned j = 0; j < n_; ++j) {
        felem x = static_cast<felem>(j);
        felem pw = 1;
        for (unsigned i = 0; i < np_; ++i) {
            g_.at(i, j) = pw;
            pw = f_->mul(pw, x);
        }
    }
}

HybridCode HybridCode::make(std::shared_ptr<const BaseField> field, unsigned n,
                            unsigned n_prime, unsigned k) {
    if (!(k < n_prime && n_prime < n))
        throw ConfigError("hybrid code needs k < n' < n");
    if (field->order() < n)
        throw ConfigError("hybrid code needs q >= n for distinct evaluation points");
    return HybridCode(std::move(field), n, n_prime, k);
}

MatFq HybridCode::encode(const Subspace& u) const {
    if (u.ambient() != np_) throw DimensionError("subspace must live in F_q^{n'}");
    if (u.dim() != k_) throw DimensionError("subspace dimension must be k");
    return u.basis() * g_;
}

std::vector<felem> HybridCode::grs_erasure_decode(const ErasableMatrix& m, unsigned row) const {
    if (m.cols() != n_) throw DimensionError("row length must be n");
    std::vector<unsigned> known;
    for (unsigned c = 0; c < n_; ++c)
        if (!m.erased(row, c)) known.push_back(c);
    if (known.size() < np_)
        throw UndecodableError(UndecodableError::Reason::TooManyErasures,
                               "only " + std::to_string(known.size()) +
                                   " unerased coordinates, need " + std::to_string(np_));

    // interpolate through the first n' unerased points
    const BaseField& f = *f_;
    detail::Poly result; // accumulated coefficients
    detail::Poly master = {1};
    for (unsigned i = 0; i < np_; ++i)
        master = detail::poly_mul(f, master, {f.neg(eval_point(known[i])), 1});
    for (unsigned i = 0; i < np_; ++i) {
        felem xi = eval_point(known[i]);
        // L_i = master / (x - x_i), then scale by y_i / L_i(x_i)
        detail::Poly li;
        detail::poly_divmod(f, master, {f.neg(xi), 1}, &li, nullptr);
        felem denom = detail::poly_eval(f, li, xi);
        felem scale = f.div(m.value(row, known[i]), denom);
        result = detail::poly_add(f, result, detail::poly_scale(f, li, scale));
    }
    result.resize(np_, 0);

    // the remaining unerased coordinates must agree
    for (unsigned idx = np_; idx < known.size(); ++idx) {
        felem want = m.value(row, known[idx]);
        if (detail::poly_eval(f, result, eval_point(known[idx])) != want)
            throw UndecodableError(UndecodableError::Reason::Inconsistent,
                                   "row does not lie in the GRS code");
    }
    return std::vector<felem>(result.begin(), result.end());
}

Subspace HybridCode::decode_cec(const ErasableMatrix& r) const {
    if (r.rows() != k_ || r.cols() != n_) throw DimensionError("observation must be k x n");
    MatFq messages(f_, k_, np_);
    for (unsigned row = 0; row < k_; ++row) {
        std::vector<felem> msg = grs_erasure_decode(r, row);
        for (unsigned c = 0; c < np_; ++c) messages.at(row, c) = msg[c];
    }
    if (rank(messages) < k_)
        throw UndecodableError(UndecodableError::Reason::RankDeficient,
                               "observation has deletions; the erasure-only decoder cannot recover them");
    return Subspace(messages);
}

std::string HybridCode::spec_string() const {
    std::ostringstream os;
    os << "hybrid:q=" << q() << ",n=" << n_ << ",np=" << np_ << ",k=" << k_;
    return os.str();
}

HybridCode parse_hybrid_spec(const std::string& spec) {
    std::string body = detail::trim(spec);
    if (body.rfind("hybrid:", 0) == 0) body = body.substr(7);
    unsigned q = 0, n = 0, np = 0, k = 0;
    for (auto& [key, val] : detail::parse_kv(body)) {
        if (key == "q") q = static_cast<unsigned>(detail::parse_uint(val, "q"));
        else if (key == "n") n = static_cast<unsigned>(detail::parse_uint(val, "n"));
        else if (key == "np") np = static_cast<unsigned>(detail::parse_uint(val, "np"));
        else if (key == "k") k = static_cast<unsigned>(detail::parse_uint(val, "k"));
        else throw ConfigError("unknown hybrid spec key '" + key + "'");
    }
    if (!q || !n || !np || !k) throw ConfigError("hybrid spec needs q, n, np and k");
    return HybridCode::make(BaseField::make_order(q), n, np, k);
}

} // namespace rlnc
