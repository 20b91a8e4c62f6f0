#pragma once

// Dense polynomial arithmetic over a BaseField, coefficients LSB first.
// Internal helper shared by the field construction and the GRS decoder.

#include <cstdint>
#include <vector>

#include "rlnc/gf.hpp"

namespace rlnc::detail {

using Poly = std::vector<felem>;

inline void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int poly_deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly poly_add(const BaseField& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        felem x = i < a.size() ? a[i] : 0;
        felem y = i < b.size() ? b[i] : 0;
        r[i] = f.add(x, y);
    }
    poly_trim(r);
    return r;
}

inline Poly poly_sub(const BaseField& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        felem x = i < a.size() ? a[i] : 0;
        felem y = i < b.size() ? b[i] : 0;
        r[i] = f.sub(x, y);
    }
    poly_trim(r);
    return r;
}

inline Poly poly_scale(const BaseField& f, const Poly& a, felem c) {
    if (c == 0) return {};
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], c);
    return r;
}

inline Poly poly_mul(const BaseField& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    poly_trim(r);
    return r;
}

// a = q*b + r with deg r < deg b; b nonzero.
inline void poly_divmod(const BaseField& f, Poly a, const Poly& b, Poly* quot, Poly* rem) {
    Poly q;
    felem lead_inv = f.inv(b.back());
    while (poly_deg(a) >= poly_deg(b)) {
        int shift = poly_deg(a) - poly_deg(b);
        felem c = f.mul(a.back(), lead_inv);
        if (static_cast<int>(q.size()) <= shift) q.resize(shift + 1, 0);
        q[shift] = f.add(q[shift], c);
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] = f.sub(a[i + shift], f.mul(c, b[i]));
        poly_trim(a);
    }
    if (quot) *quot = std::move(q);
    if (rem) *rem = std::move(a);
}

inline Poly poly_mod(const BaseField& f, Poly a, const Poly& b) {
    Poly r;
    poly_divmod(f, std::move(a), b, nullptr, &r);
    return r;
}

inline Poly poly_gcd(const BaseField& f, Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = poly_mod(f, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) a = poly_scale(f, a, f.inv(a.back()));
    return a;
}

inline Poly poly_powmod(const BaseField& f, Poly base, std::uint64_t e, const Poly& mod) {
    Poly r = {1};
    base = poly_mod(f, std::move(base), mod);
    while (e > 0) {
        if (e & 1) r = poly_mod(f, poly_mul(f, r, base), mod);
        base = poly_mod(f, poly_mul(f, base, base), mod);
        e >>= 1;
    }
    return r;
}

inline felem poly_eval(const BaseField& f, const Poly& a, felem x) {
    felem r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = f.add(f.mul(r, x), a[i]);
    return r;
}

} // namespace rlnc::detail
