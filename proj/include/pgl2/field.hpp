#pragma once

// Exact arithmetic in F_q = F_{p^k} and in relative extensions F_{q^d},
// d in {2,3,4}. Elements are canonical integer codes: little-endian digit
// vectors over the coefficient level, packed positionally (digit i scaled
// by subfield_size()^i). Embedding a subfield element along the tower is
// therefore the identity on codes.
//
// Contexts are immutable after construction and freely shareable across
// threads. Small fields get exp/log tables; everything else runs on
// digit-vector polynomial arithmetic.

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "numtheory.hpp"
#include "polyops.hpp"

namespace pgl2 {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field : public std::enable_shared_from_this<Field> {
public:
    static constexpr u64 kDefaultBound = 1ull << 20;
    static constexpr u64 kTableLimit = 1ull << 22;

    // F_{p^k} with the canonical modulus (least monic irreducible of degree
    // k over F_p under the integer coefficient encoding).
    static FieldPtr make(u64 p, unsigned k, u64 bound = kDefaultBound) {
        require(is_prime_u64(p), "nonprime_characteristic",
                "p = " + std::to_string(p) + " is not prime");
        require(k >= 1, "bad_degree", "k must be positive");
        u128 qq = 1;
        for (unsigned i = 0; i < k; ++i) {
            qq *= p;
            require(qq <= bound, "bound_exceeded",
                    "p^k exceeds the configured bound " + std::to_string(bound));
        }
        return FieldPtr(new Field(nullptr, p, k));
    }

    // Relative degree-d extension with the canonical relative modulus:
    // x^2 - eps for d = 2 (so the adjoined root is a square root of the
    // canonical non-residue), otherwise the least monic irreducible.
    static FieldPtr extend(FieldPtr base, unsigned d) {
        require(base != nullptr, "null_context", "extend: null base context");
        require(d >= 2 && d <= 4, "bad_degree", "relative extension degree must be 2, 3 or 4");
        u128 qq = 1;
        for (unsigned i = 0; i < d; ++i) {
            qq *= base->q();
            require(qq < (u128(1) << 62), "bound_exceeded", "extension size exceeds 2^62");
        }
        return FieldPtr(new Field(std::move(base), 0, d));
    }

    u64 q() const { return q_; }
    u64 characteristic() const { return p_; }
    unsigned degree() const { return deg_; }
    unsigned absolute_degree() const { return base_ ? base_->absolute_degree() * deg_ : deg_; }
    const Field* base() const { return base_.get(); }
    FieldPtr base_ptr() const { return base_; }
    u64 subfield_size() const { return sub_q_; }
    const std::vector<u64>& modulus() const { return modulus_; }
    bool is_extension() const { return base_ != nullptr; }

    std::string name() const {
        if (!base_) return "F_" + std::to_string(q_);
        return "F_" + std::to_string(q_) + "/F_" + std::to_string(sub_q_);
    }

    // ---- element arithmetic on canonical codes -------------------------

    u64 add(u64 a, u64 b) const {
        if (deg_ == 1 && !base_) return a + b >= p_ ? a + b - p_ : a + b;
        u64 r = 0, scale = 1;
        for (unsigned i = 0; i < deg_; ++i) {
            u64 da = a % sub_q_, db = b % sub_q_;
            a /= sub_q_;
            b /= sub_q_;
            r += sub_add(da, db) * scale;
            scale *= sub_q_;
        }
        return r;
    }

    u64 neg(u64 a) const {
        if (deg_ == 1 && !base_) return a == 0 ? 0 : p_ - a;
        u64 r = 0, scale = 1;
        for (unsigned i = 0; i < deg_; ++i) {
            r += sub_neg(a % sub_q_) * scale;
            a /= sub_q_;
            scale *= sub_q_;
        }
        return r;
    }

    u64 sub(u64 a, u64 b) const { return add(a, neg(b)); }

    u64 mul(u64 a, u64 b) const {
        if (a == 0 || b == 0) return 0;
        if (has_tables_) {
            u64 s = u64(log_[a]) + log_[b];
            if (s >= q_ - 1) s -= q_ - 1;
            return exp_[s];
        }
        return mul_raw(a, b);
    }

    u64 inv(u64 a) const {
        require(a != 0, "division_by_zero", "inverse of zero in " + name());
        if (has_tables_) {
            u64 l = log_[a];
            return exp_[l == 0 ? 0 : q_ - 1 - l];
        }
        return inv_raw(a);
    }

    u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }

    u64 pow(u64 a, u64 e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        u64 o = q_ - 1;
        u64 em = e % o;
        if (has_tables_) return exp_[static_cast<u64>(u128(log_[a]) * em % o)];
        u64 r = 1;
        while (em) {
            if (em & 1) r = mul(r, a);
            a = mul(a, a);
            em >>= 1;
        }
        return r;
    }

    u64 from_int(i64 n) const {
        i64 m = n % static_cast<i64>(p_);
        if (m < 0) m += static_cast<i64>(p_);
        return static_cast<u64>(m);
    }

    // ---- tower structure -----------------------------------------------

    u64 embed_base(u64 x) const {
        require(base_ && x < sub_q_, "bad_embedding", "element does not come from the base field");
        return x;
    }

    bool in_base(u64 x) const { return x < sub_q_; }

    u64 to_base(u64 x) const {
        require(base_ && x < sub_q_, "not_in_subfield", "element is not in the base field");
        return x;
    }

    // x -> x^q for the relative Frobenius over the base field.
    u64 frobenius(u64 x) const {
        require(base_ != nullptr, "not_extension", "frobenius: context is not an extension");
        return pow(x, sub_q_);
    }

    u64 frobenius_iter(u64 x, unsigned n) const {
        for (unsigned i = 0; i < n; ++i) x = frobenius(x);
        return x;
    }

    // N_{q^d/q}(x) = prod of the d Galois conjugates; lands in the base field.
    u64 norm_to_base(u64 x) const {
        require(base_ != nullptr, "not_extension", "norm: context is not an extension");
        u64 acc = x, cur = x;
        for (unsigned i = 1; i < deg_; ++i) {
            cur = frobenius(cur);
            acc = mul(acc, cur);
        }
        return to_base(acc);
    }

    std::vector<u64> digits_of(u64 x) const {
        std::vector<u64> d(deg_);
        for (unsigned i = 0; i < deg_; ++i) {
            d[i] = x % sub_q_;
            x /= sub_q_;
        }
        return d;
    }

    u64 from_digits(const std::vector<u64>& d) const {
        require(d.size() <= deg_, "bad_digits", "too many digits");
        u64 x = 0, scale = 1;
        for (unsigned i = 0; i < deg_; ++i) {
            u64 di = i < d.size() ? d[i] : 0;
            require(di < sub_q_, "bad_digits", "digit out of range");
            x += di * scale;
            scale *= sub_q_;
        }
        return x;
    }

    // ---- residues, roots, canonical constants ----------------------------

    bool is_square(u64 x) const {
        require(p_ != 2, "char2_residue", "quadratic residues need odd characteristic");
        if (x == 0) return true;
        if (has_tables_) return (log_[x] & 1) == 0;
        return pow(x, (q_ - 1) / 2) == 1;
    }

    // Canonical square root (the root with smaller code), if one exists.
    // (q+1)/4 exponent when q = 3 mod 4, Tonelli-Shanks otherwise.
    std::optional<u64> sqrt_of(u64 x) const {
        require(p_ != 2, "char2_sqrt", "square roots need odd characteristic");
        if (x == 0) return 0;
        if (!is_square(x)) return std::nullopt;
        u64 r;
        if (q_ % 4 == 3) {
            r = pow(x, (q_ + 1) / 4);
        } else {
            u64 t = q_ - 1;
            unsigned s = 0;
            while ((t & 1) == 0) { t >>= 1; ++s; }
            u64 c = pow(nonresidue(), t);
            r = pow(x, (t + 1) / 2);
            u64 u = pow(x, t);
            unsigned m = s;
            while (u != 1) {
                u64 v = u;
                unsigned i = 0;
                while (v != 1) { v = mul(v, v); ++i; }
                u64 b = c;
                for (unsigned j = 0; j + i + 1 < m; ++j) b = mul(b, b);
                r = mul(r, b);
                c = mul(b, b);
                u = mul(u, c);
                m = i;
            }
        }
        return std::min(r, neg(r));
    }

    u64 sqrt_req(u64 x) const {
        auto r = sqrt_of(x);
        require(r.has_value(), "not_a_square", "element has no square root in " + name());
        return *r;
    }

    // gamma: least generator of the multiplicative group.
    u64 generator() const { return gamma_; }

    // eps: least quadratic non-residue (odd characteristic).
    u64 nonresidue() const {
        require(p_ != 2, "char2_residue", "no non-residue in characteristic 2");
        return eps_;
    }

    // omega: canonical primitive cube root of unity, present iff q = 1 mod 3.
    std::optional<u64> cube_root_unity() const { return omega_; }

    bool same(const Field& o) const { return this == &o; }

private:
    Field(FieldPtr base, u64 p, unsigned deg) : base_(std::move(base)), deg_(deg) {
        if (base_) {
            p_ = base_->characteristic();
            sub_q_ = base_->q();
        } else {
            p_ = p;
            sub_q_ = p;
        }
        q_ = 1;
        for (unsigned i = 0; i < deg_; ++i) q_ *= sub_q_;
        pick_modulus();
        if (q_ <= kTableLimit) build_tables();
        gamma_ = find_generator();
        if (has_tables_) rebase_tables_on_gamma();
        if (p_ != 2) eps_ = find_nonresidue();
        if (q_ % 3 == 1) omega_ = find_omega();
    }

    struct SubOps {
        const Field* f;
        u64 p;
        u64 q() const { return f ? f->q() : p; }
        u64 characteristic() const { return p; }
        u64 add(u64 a, u64 b) const { return f ? f->add(a, b) : (a + b) % p; }
        u64 sub(u64 a, u64 b) const { return f ? f->sub(a, b) : (a + p - b) % p; }
        u64 neg(u64 a) const { return f ? f->neg(a) : (a == 0 ? 0 : p - a); }
        u64 mul(u64 a, u64 b) const { return f ? f->mul(a, b) : mulmod_u64(a, b, p); }
        u64 inv(u64 a) const {
            if (f) return f->inv(a);
            require(a != 0, "division_by_zero", "inverse of zero");
            return powmod_u64(a, p - 2, p);
        }
    };

    SubOps sub_ops() const { return SubOps{base_.get(), p_}; }

    u64 sub_add(u64 a, u64 b) const { return base_ ? base_->add(a, b) : (a + b) % p_; }
    u64 sub_neg(u64 a) const { return base_ ? base_->neg(a) : (a == 0 ? 0 : p_ - a); }
    u64 sub_mul(u64 a, u64 b) const { return base_ ? base_->mul(a, b) : mulmod_u64(a, b, p_); }

    void pick_modulus() {
        auto K = sub_ops();
        if (deg_ == 1) {
            modulus_ = {0, 1};
            return;
        }
        if (base_ && deg_ == 2 && p_ != 2) {
            modulus_.assign(deg_ + 1, 0);
            modulus_[0] = base_->neg(base_->nonresidue());
            modulus_[2] = 1;
            return;
        }
        for (u64 m = 0; m < q_; ++m) {
            poly::Poly f(deg_ + 1, 0);
            u64 t = m;
            for (unsigned i = 0; i < deg_; ++i) {
                f[i] = t % sub_q_;
                t /= sub_q_;
            }
            f[deg_] = 1;
            if (poly::is_irreducible(K, f)) {
                modulus_ = std::move(f);
                return;
            }
        }
        fail("no_modulus", "no irreducible modulus found (impossible)");
    }

    u64 mul_raw(u64 a, u64 b) const {
        std::array<u64, 48> tmp{};
        std::array<u64, 24> da{}, db{};
        for (unsigned i = 0; i < deg_; ++i) {
            da[i] = a % sub_q_;
            a /= sub_q_;
            db[i] = b % sub_q_;
            b /= sub_q_;
        }
        for (unsigned i = 0; i < deg_; ++i) {
            if (da[i] == 0) continue;
            for (unsigned j = 0; j < deg_; ++j) {
                if (db[j] == 0) continue;
                tmp[i + j] = sub_add(tmp[i + j], sub_mul(da[i], db[j]));
            }
        }
        for (unsigned i = 2 * deg_ - 2; i >= deg_ && i < 48; --i) {
            u64 c = tmp[i];
            if (c == 0) continue;
            tmp[i] = 0;
            for (unsigned j = 0; j < deg_; ++j) {
                u64 t = sub_mul(c, modulus_[j]);
                tmp[i - deg_ + j] = sub_add(tmp[i - deg_ + j], sub_neg(t));
            }
        }
        u64 r = 0, scale = 1;
        for (unsigned i = 0; i < deg_; ++i) {
            r += tmp[i] * scale;
            scale *= sub_q_;
        }
        return r;
    }

    // Extended Euclid at the digit level; invariant s_i * a = r_i (mod modulus).
    u64 inv_raw(u64 a) const {
        auto K = sub_ops();
        poly::Poly r0 = modulus_, r1 = to_poly(a);
        poly::Poly s0 = {}, s1 = {1};
        while (poly::deg(r1) > 0) {
            auto [qt, rem] = poly::divmod(K, r0, r1);
            poly::Poly s2 = poly::sub(K, s0, poly::mul(K, qt, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        require(!r1.empty(), "division_by_zero", "inverse of zero");
        u64 c = K.inv(r1[0]);
        poly::Poly res = poly::scale(K, s1, c);
        res = poly::mod(K, std::move(res), modulus_);
        return from_poly(res);
    }

    poly::Poly to_poly(u64 x) const {
        poly::Poly f(deg_, 0);
        for (unsigned i = 0; i < deg_; ++i) {
            f[i] = x % sub_q_;
            x /= sub_q_;
        }
        poly::trim(f);
        return f;
    }

    u64 from_poly(const poly::Poly& f) const {
        u64 x = 0, scale = 1;
        for (unsigned i = 0; i < deg_; ++i) {
            x += (i < f.size() ? f[i] : 0) * scale;
            scale *= sub_q_;
        }
        return x;
    }

    u64 pow_raw(u64 a, u64 e) const {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mul_raw(r, a);
            a = mul_raw(a, a);
            e >>= 1;
        }
        return r;
    }

    u64 find_generator() const {
        if (q_ == 2) return 1;
        auto primes = prime_divisors_u64(q_ - 1);
        for (u64 x = 2; x < q_; ++x) {
            bool ok = true;
            for (u64 r : primes) {
                u64 y = has_tables_ ? pow(x, (q_ - 1) / r) : pow_raw(x, (q_ - 1) / r);
                if (y == 1) { ok = false; break; }
            }
            if (ok) return x;
        }
        fail("no_generator", "no multiplicative generator found (impossible)");
    }

    u64 find_nonresidue() const {
        for (u64 x = 2; x < q_; ++x) {
            if (!is_square(x)) return x;
        }
        fail("no_nonresidue", "no quadratic non-residue found (impossible)");
    }

    u64 find_omega() const {
        u64 w1 = pow(gamma_, (q_ - 1) / 3);
        u64 w2 = mul(w1, w1);
        u64 w = std::min(w1, w2);
        require(add(add(mul(w, w), w), 1) == 0, "bad_omega", "omega sanity check failed");
        return w;
    }

    // First table pass uses an arbitrary primitive element so that pow() is
    // table-backed during the canonical generator search; afterwards the
    // tables are rebuilt on the canonical gamma so exp_[1] == gamma.
    void build_tables() {
        u64 g = 0;
        auto primes = prime_divisors_u64(q_ - 1);
        for (u64 x = 2; x < q_; ++x) {
            bool ok = true;
            for (u64 r : primes) {
                if (pow_raw(x, (q_ - 1) / r) == 1) { ok = false; break; }
            }
            if (ok) { g = x; break; }
        }
        if (q_ == 2) g = 1;
        fill_tables(g);
        has_tables_ = true;
    }

    void rebase_tables_on_gamma() {
        if (exp_[1] != gamma_) fill_tables(gamma_);
    }

    void fill_tables(u64 g) {
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        u64 cur = 1;
        for (u64 i = 0; i + 1 < q_; ++i) {
            exp_[i] = static_cast<u32>(cur);
            log_[cur] = static_cast<u32>(i);
            cur = mul_raw(cur, g);
        }
        require(cur == 1, "bad_generator", "table generator has wrong order");
    }

    FieldPtr base_;
    u64 p_ = 0;
    unsigned deg_ = 0;
    u64 sub_q_ = 0;
    u64 q_ = 0;
    std::vector<u64> modulus_;
    bool has_tables_ = false;
    std::vector<u32> exp_, log_;
    u64 gamma_ = 0;
    u64 eps_ = 0;
    std::optional<u64> omega_;
};

// polyops adapter for a full Field context.
struct FOps {
    const Field* F;
    u64 q() const { return F->q(); }
    u64 characteristic() const { return F->characteristic(); }
    u64 add(u64 a, u64 b) const { return F->add(a, b); }
    u64 sub(u64 a, u64 b) const { return F->sub(a, b); }
    u64 neg(u64 a) const { return F->neg(a); }
    u64 mul(u64 a, u64 b) const { return F->mul(a, b); }
    u64 inv(u64 a) const { return F->inv(a); }
};

inline FOps fops(const Field& F) { return FOps{&F}; }

inline FieldPtr make_field(u64 p, unsigned k, u64 bound = Field::kDefaultBound) {
    return Field::make(p, k, bound);
}

inline FieldPtr extend(FieldPtr base, unsigned d) { return Field::extend(std::move(base), d); }

namespace detail {

// Canonical isomorphism from the degree-2 subfield of a degree-4 relative
// extension onto the separate degree-2 extension context: the subfield
// generator mu maps to the least root of its minimal polynomial over F_q.
inline u64 coerce_deg4_to_deg2(const Field& e4, u64 x, const Field& e2) {
    require(e4.base() == e2.base() && e4.degree() == 4 && e2.degree() == 2, "not_a_subfield",
            "coercion requires a degree-4 and a degree-2 extension of the same base");
    const Field& B = *e4.base();
    u64 mu = e4.pow(e4.generator(), (e4.q() - 1) / (e2.q() - 1));
    // mu lies in the intermediate subfield, so its conjugates over the base
    // are mu and phi(mu)
    u64 tr = e4.add(mu, e4.frobenius(mu));
    u64 nm = e4.mul(mu, e4.frobenius(mu));
    u64 c1 = e4.to_base(e4.neg(tr));
    u64 c0 = e4.to_base(nm);
    // least root of T^2 + c1 T + c0 over e2 (quadratic formula, char != 2)
    u64 disc = B.sub(B.mul(c1, c1), B.mul(B.from_int(4), c0));
    u64 sd = e2.sqrt_req(e2.embed_base(disc));
    u64 half = e2.inv(e2.from_int(2));
    u64 r1 = e2.mul(e2.sub(e2.neg(e2.embed_base(c1)), sd), half);
    u64 r2 = e2.mul(e2.add(e2.neg(e2.embed_base(c1)), sd), half);
    u64 r = std::min(r1, r2);
    // decompose x = a + b*mu with a, b in the base field
    auto xd = e4.digits_of(x);
    auto md = e4.digits_of(mu);
    unsigned i0 = 1;
    while (i0 < 4 && md[i0] == 0) ++i0;
    require(i0 < 4, "not_a_subfield", "degenerate subfield generator");
    u64 b = B.div(xd[i0], md[i0]);
    u64 a = B.sub(xd[0], B.mul(b, md[0]));
    for (unsigned i = 1; i < 4; ++i) {
        require(xd[i] == B.mul(b, md[i]), "not_in_subfield",
                "element is not in the intermediate subfield");
    }
    return e2.add(e2.embed_base(a), e2.mul(e2.embed_base(b), r));
}

} // namespace detail

// Relative norm from an extension onto the base field or onto the
// intermediate F_{q^2} inside F_{q^4} (where N(x) = x phi^2(x)).
inline u64 norm_rel(const Field& from, u64 x, const Field& to) {
    if (&to == from.base()) return from.norm_to_base(x);
    if (from.base() == to.base() && from.degree() == 4 && to.degree() == 2) {
        u64 y = from.mul(x, from.frobenius(from.frobenius(x)));
        return detail::coerce_deg4_to_deg2(from, y, to);
    }
    fail("not_a_subfield", "norm target is not a subfield of the source in this tower");
}

// Thin checked element handle used by high-level code and tests; inner
// loops talk to Field directly with raw codes.
struct FF {
    const Field* F = nullptr;
    u64 v = 0;
};

inline FF ff(const Field& F, u64 v) { return FF{&F, v}; }

namespace detail {
inline void same_ctx(const FF& a, const FF& b) {
    require(a.F == b.F, "context_mismatch", "elements of different contexts never mix");
}
} // namespace detail

inline FF operator+(FF a, FF b) { detail::same_ctx(a, b); return {a.F, a.F->add(a.v, b.v)}; }
inline FF operator-(FF a, FF b) { detail::same_ctx(a, b); return {a.F, a.F->sub(a.v, b.v)}; }
inline FF operator*(FF a, FF b) { detail::same_ctx(a, b); return {a.F, a.F->mul(a.v, b.v)}; }
inline FF operator/(FF a, FF b) { detail::same_ctx(a, b); return {a.F, a.F->div(a.v, b.v)}; }
inline FF operator-(FF a) { return {a.F, a.F->neg(a.v)}; }
inline bool operator==(FF a, FF b) { detail::same_ctx(a, b); return a.v == b.v; }
inline bool operator!=(FF a, FF b) { return !(a == b); }

} // namespace pgl2
