#pragma once

// Runtime-constructed finite fields F_{p^k} = F_p[g]/(modulus), desk scale.
// Elements are little-endian coefficient vectors over the prime field; the
// deterministic element order is lexicographic on that vector (c_0 first).
// Contexts are immutable after construction and safe to share across threads.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace towerforge {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// work / size guard violations map to configuration errors at the CLI
struct guard_error : std::runtime_error {
    explicit guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

constexpr u64 kEnumGuard = u64(1) << 20;  // largest field we ever enumerate

namespace detail {

struct CtxImpl {
    u64 id = 0;
    i64 p = 0;                // characteristic
    int k = 1;                // degree over the prime field
    std::vector<i64> modulus; // monic, length k+1, entries in [0,p)
    // embedding data: where the parent context's generator lands in this one
    std::shared_ptr<const CtxImpl> parent;
    std::vector<i64> parent_gen_image;
    // reduction table: g^(k+j) as a coefficient vector, j = 0..k-2
    std::vector<std::vector<i64>> redtab;

    u64 size() const {
        u64 s = 1;
        for (int i = 0; i < k; ++i) s *= u64(p);
        return s;
    }
};

inline u64 next_ctx_id() {
    static std::mutex m;
    static u64 counter = 0;
    std::lock_guard<std::mutex> lock(m);
    return ++counter;
}

} // namespace detail

class FieldCtx;
FieldCtx make_prime_field(i64 p);

class FieldElem {
public:
    FieldElem() = default;
    FieldElem(std::shared_ptr<const detail::CtxImpl> ctx, std::vector<i64> c)
        : ctx_(std::move(ctx)), c_(std::move(c)) {}

    const std::vector<i64>& coeffs() const { return c_; }
    const std::shared_ptr<const detail::CtxImpl>& impl() const { return ctx_; }

    bool is_zero() const {
        for (i64 v : c_) if (v != 0) return false;
        return true;
    }
    bool is_one() const {
        if (c_.empty() || c_[0] != 1) return false;
        for (std::size_t i = 1; i < c_.size(); ++i) if (c_[i] != 0) return false;
        return true;
    }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        a.check_ctx(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
    // deterministic element order: little-endian coefficient vector, lex
    friend bool operator<(const FieldElem& a, const FieldElem& b) {
        a.check_ctx(b);
        return std::lexicographical_compare(a.c_.begin(), a.c_.end(),
                                            b.c_.begin(), b.c_.end());
    }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        a.check_ctx(b);
        std::vector<i64> r(a.c_);
        const i64 p = a.ctx_->p;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (r[i] + b.c_[i]) % p;
        return FieldElem(a.ctx_, std::move(r));
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
        a.check_ctx(b);
        std::vector<i64> r(a.c_);
        const i64 p = a.ctx_->p;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = ((r[i] - b.c_[i]) % p + p) % p;
        return FieldElem(a.ctx_, std::move(r));
    }
    friend FieldElem operator-(const FieldElem& a) {
        std::vector<i64> r(a.c_);
        const i64 p = a.ctx_->p;
        for (auto& v : r) v = (p - v) % p;
        return FieldElem(a.ctx_, std::move(r));
    }
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        a.check_ctx(b);
        const auto& ctx = *a.ctx_;
        const int k = ctx.k;
        const i64 p = ctx.p;
        if (k == 1) return FieldElem(a.ctx_, {a.c_[0] * b.c_[0] % p});
        std::vector<i64> conv(2 * k - 1, 0);
        for (int i = 0; i < k; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < k; ++j)
                conv[i + j] = (conv[i + j] + a.c_[i] * b.c_[j]) % p;
        }
        std::vector<i64> r(conv.begin(), conv.begin() + k);
        for (int j = k; j < 2 * k - 1; ++j) {
            if (conv[j] == 0) continue;
            const auto& red = ctx.redtab[j - k];
            for (int i = 0; i < k; ++i) r[i] = (r[i] + conv[j] * red[i]) % p;
        }
        return FieldElem(a.ctx_, std::move(r));
    }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
        return a * b.inverse();
    }

    FieldElem pow(u64 e) const {
        FieldElem acc(ctx_, unit_vec());
        FieldElem base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    FieldElem inverse() const;

    std::string to_string() const;  // g-expression, e.g. "g+1", "2*g^2"

    void check_ctx(const FieldElem& other) const {
        if (ctx_.get() != other.ctx_.get())
            throw std::invalid_argument("field element context mismatch");
    }

private:
    std::vector<i64> unit_vec() const {
        std::vector<i64> v(ctx_->k, 0);
        v[0] = 1;
        return v;
    }
    std::shared_ptr<const detail::CtxImpl> ctx_;
    std::vector<i64> c_;
};

class FieldCtx {
public:
    FieldCtx() = default;
    explicit FieldCtx(std::shared_ptr<const detail::CtxImpl> impl) : impl_(std::move(impl)) {}

    i64 p() const { return impl_->p; }
    int k() const { return impl_->k; }
    u64 size() const { return impl_->size(); }
    u64 id() const { return impl_->id; }
    const std::vector<i64>& modulus() const { return impl_->modulus; }
    const std::shared_ptr<const detail::CtxImpl>& impl() const { return impl_; }

    bool same(const FieldCtx& other) const { return impl_.get() == other.impl_.get(); }

    FieldElem zero() const { return FieldElem(impl_, std::vector<i64>(impl_->k, 0)); }
    FieldElem one() const { return from_int(1); }
    FieldElem from_int(i64 v) const {
        std::vector<i64> c(impl_->k, 0);
        c[0] = (v % impl_->p + impl_->p) % impl_->p;
        return FieldElem(impl_, std::move(c));
    }
    FieldElem gen() const {
        if (impl_->k == 1)
            throw std::invalid_argument("prime field has no extension generator");
        std::vector<i64> c(impl_->k, 0);
        c[1] = 1;
        return FieldElem(impl_, std::move(c));
    }
    FieldElem elem(std::vector<i64> coeffs) const {
        if (coeffs.size() > std::size_t(impl_->k))
            throw std::invalid_argument("coefficient vector longer than field degree");
        coeffs.resize(impl_->k, 0);
        for (auto& v : coeffs) v = (v % impl_->p + impl_->p) % impl_->p;
        return FieldElem(impl_, std::move(coeffs));
    }

    // all p^k elements exactly once, ascending deterministic order
    std::vector<FieldElem> enumerate() const {
        if (size() > kEnumGuard)
            throw guard_error("field too large to enumerate (guard 2^20)");
        std::vector<FieldElem> out;
        out.reserve(size());
        std::vector<i64> c(impl_->k, 0);
        while (true) {
            out.push_back(FieldElem(impl_, c));
            int pos = impl_->k - 1;
            while (pos >= 0 && ++c[pos] == impl_->p) c[pos--] = 0;
            if (pos < 0) break;
        }
        return out;
    }

private:
    std::shared_ptr<const detail::CtxImpl> impl_;
};

namespace detail {

// modular inverse in F_p
inline i64 inv_mod(i64 a, i64 p) {
    i64 t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        i64 q = r / nr;
        std::swap(t, nt); nt -= q * t;
        std::swap(r, nr); nr -= q * r;
    }
    if (r != 1) throw std::invalid_argument("not invertible mod p");
    return (t % p + p) % p;
}

// dense polynomials over F_p, little-endian, used for ctx construction
using PVec = std::vector<i64>;

inline int pdeg(const PVec& f) {
    int d = int(f.size()) - 1;
    while (d >= 0 && f[d] == 0) --d;
    return d;
}

inline PVec ptrim(PVec f) {
    f.resize(std::size_t(std::max(pdeg(f), 0)) + 1);
    if (f.empty()) f = {0};
    return f;
}

inline PVec pmul(const PVec& a, const PVec& b, i64 p) {
    PVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return ptrim(std::move(r));
}

inline PVec pmod(PVec f, const PVec& m, i64 p) {
    int dm = pdeg(m);
    i64 lead_inv = inv_mod(m[dm], p);
    for (int df = pdeg(f); df >= dm; df = pdeg(f)) {
        i64 c = f[df] * lead_inv % p;
        for (int i = 0; i <= dm; ++i)
            f[df - dm + i] = ((f[df - dm + i] - c * m[i]) % p + p) % p;
    }
    return ptrim(std::move(f));
}

inline bool ctx_compatible(const CtxImpl* sub, const CtxImpl* sup) {
    return sub->p == sup->p && sup->k % sub->k == 0;
}

} // namespace detail

inline FieldElem FieldElem::inverse() const {
    if (is_zero()) throw std::invalid_argument("division by zero field element");
    const i64 p = ctx_->p;
    if (ctx_->k == 1) return FieldElem(ctx_, {detail::inv_mod(c_[0], p)});
    // extended Euclid in F_p[x] against the modulus
    detail::PVec r0 = ctx_->modulus, r1 = detail::ptrim(c_);
    detail::PVec s0 = {0}, s1 = {1};
    while (detail::pdeg(r1) > 0) {
        // long division step r0 = q*r1 + r2
        detail::PVec q(std::size_t(std::max(detail::pdeg(r0) - detail::pdeg(r1), 0)) + 1, 0);
        detail::PVec rem = r0;
        int d1 = detail::pdeg(r1);
        i64 li = detail::inv_mod(r1[d1], p);
        for (int d = detail::pdeg(rem); d >= d1; d = detail::pdeg(rem)) {
            i64 c = rem[d] * li % p;
            q[d - d1] = c;
            for (int i = 0; i <= d1; ++i)
                rem[d - d1 + i] = ((rem[d - d1 + i] - c * r1[i]) % p + p) % p;
            rem = detail::ptrim(std::move(rem));
        }
        detail::PVec s2_part = detail::pmul(q, s1, p);
        detail::PVec s2 = s0;
        s2.resize(std::max(s2.size(), s2_part.size()), 0);
        for (std::size_t i = 0; i < s2_part.size(); ++i)
            s2[i] = ((s2[i] - s2_part[i]) % p + p) % p;
        s0 = std::move(s1); s1 = detail::ptrim(std::move(s2));
        r0 = std::move(r1); r1 = detail::ptrim(std::move(rem));
        if (detail::pdeg(r1) < 0) throw std::invalid_argument("element not invertible");
    }
    // r1 is a nonzero constant: scale s1 by its inverse
    i64 scale = detail::inv_mod(r1[0], p);
    detail::PVec res = s1;
    res.resize(ctx_->k, 0);
    for (auto& v : res) v = v * scale % p;
    return FieldElem(ctx_, std::move(res));
}

inline std::string FieldElem::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int e = ctx_->k - 1; e >= 0; --e) {
        i64 c = c_[e];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (e == 0) { out += std::to_string(c); continue; }
        if (c != 1) { out += std::to_string(c); out += "*"; }
        out += "g";
        if (e > 1) { out += "^"; out += std::to_string(e); }
    }
    return out;
}

// ---- context construction ----------------------------------------------

namespace detail {

inline std::shared_ptr<const CtxImpl> build_impl(i64 p, std::vector<i64> modulus,
                                                 std::shared_ptr<const CtxImpl> parent,
                                                 std::vector<i64> parent_gen_image) {
    auto impl = std::make_shared<CtxImpl>();
    impl->id = next_ctx_id();
    impl->p = p;
    impl->k = int(modulus.size()) - 1;
    impl->modulus = std::move(modulus);
    impl->parent = std::move(parent);
    impl->parent_gen_image = std::move(parent_gen_image);
    const int k = impl->k;
    if (k > 1) {
        // g^k = -(modulus minus leading term), then extend by multiplication
        std::vector<i64> cur(k, 0);
        for (int i = 0; i < k; ++i) cur[i] = ((-impl->modulus[i]) % p + p) % p;
        impl->redtab.push_back(cur);
        for (int j = 1; j < k - 1; ++j) {
            std::vector<i64> nxt(k, 0);
            // multiply cur by g, reduce using redtab[0]
            i64 top = cur[k - 1];
            for (int i = k - 1; i > 0; --i) nxt[i] = cur[i - 1];
            nxt[0] = 0;
            if (top != 0)
                for (int i = 0; i < k; ++i)
                    nxt[i] = (nxt[i] + top * impl->redtab[0][i]) % p;
            impl->redtab.push_back(nxt);
            cur = std::move(nxt);
        }
    }
    return impl;
}

} // namespace detail

inline FieldCtx make_prime_field(i64 p) {
    if (p < 2) throw std::invalid_argument("characteristic must be >= 2");
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("characteristic must be prime");
    if (u64(p) > kEnumGuard) throw guard_error("prime field beyond 2^20 guard");
    static std::mutex m;
    static std::map<i64, FieldCtx> registry;
    std::lock_guard<std::mutex> lock(m);
    auto it = registry.find(p);
    if (it != registry.end()) return it->second;
    FieldCtx ctx(detail::build_impl(p, {0, 1}, nullptr, {}));
    registry.emplace(p, ctx);
    return ctx;
}

// ---- univariate polynomials over a context (dense, little-endian) -------

using UPoly = std::vector<FieldElem>;

inline int updeg(const UPoly& f) {
    int d = int(f.size()) - 1;
    while (d >= 0 && f[std::size_t(d)].is_zero()) --d;
    return d;
}

inline UPoly uptrim(UPoly f) {
    while (f.size() > 1 && f.back().is_zero()) f.pop_back();
    return f;
}

inline UPoly upadd(const UPoly& a, const UPoly& b) {
    UPoly r = a.size() >= b.size() ? a : b;
    const UPoly& s = a.size() >= b.size() ? b : a;
    for (std::size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
    return uptrim(std::move(r));
}

inline UPoly upsub(const UPoly& a, const UPoly& b, const FieldCtx& K) {
    UPoly r = a;
    r.resize(std::max(a.size(), b.size()), K.zero());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    return uptrim(std::move(r));
}

inline UPoly upmul(const UPoly& a, const UPoly& b, const FieldCtx& K) {
    if (updeg(a) < 0 || updeg(b) < 0) return {K.zero()};
    UPoly r(a.size() + b.size() - 1, K.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = r[i + j] + a[i] * b[j];
    }
    return uptrim(std::move(r));
}

// division with remainder; divisor must have invertible leading coefficient
inline std::pair<UPoly, UPoly> updivmod(UPoly f, const UPoly& g, const FieldCtx& K) {
    int dg = updeg(g);
    if (dg < 0) throw std::invalid_argument("division by zero polynomial");
    int df = updeg(f);
    if (df < dg) return {{K.zero()}, uptrim(std::move(f))};
    FieldElem li = g[std::size_t(dg)].inverse();
    UPoly q(std::size_t(df - dg) + 1, K.zero());
    while ((df = updeg(f)) >= dg) {
        FieldElem c = f[std::size_t(df)] * li;
        q[std::size_t(df - dg)] = c;
        for (int i = 0; i <= dg; ++i)
            f[std::size_t(df - dg + i)] = f[std::size_t(df - dg + i)] - c * g[std::size_t(i)];
    }
    return {uptrim(std::move(q)), uptrim(std::move(f))};
}

inline UPoly upmod(UPoly f, const UPoly& g, const FieldCtx& K) {
    return updivmod(std::move(f), g, K).second;
}

inline UPoly upmonic(UPoly f) {
    int d = updeg(f);
    if (d < 0) return f;
    FieldElem li = f[std::size_t(d)].inverse();
    for (auto& c : f) c = c * li;
    return f;
}

inline UPoly upgcd(UPoly a, UPoly b, const FieldCtx& K) {
    a = uptrim(std::move(a));
    b = uptrim(std::move(b));
    while (updeg(b) >= 0) {
        UPoly r = upmod(a, b, K);
        a = std::move(b);
        b = std::move(r);
    }
    return upmonic(std::move(a));
}

inline FieldElem upeval(const UPoly& f, const FieldElem& x) {
    FieldElem acc = x - x;  // zero of x's context
    for (int i = updeg(f); i >= 0; --i) acc = acc * x + f[std::size_t(i)];
    return acc;
}

inline UPoly uppowmod(const UPoly& base, u64 e, const UPoly& mod, const FieldCtx& K) {
    UPoly acc = {K.one()};
    UPoly b = upmod(base, mod, K);
    while (e) {
        if (e & 1) acc = upmod(upmul(acc, b, K), mod, K);
        b = upmod(upmul(b, b, K), mod, K);
        e >>= 1;
    }
    return acc;
}

inline UPoly upderiv(const UPoly& f, const FieldCtx& K) {
    if (f.size() <= 1) return {K.zero()};
    UPoly r(f.size() - 1, K.zero());
    for (std::size_t i = 1; i < f.size(); ++i)
        r[i - 1] = f[i] * K.from_int(i64(i));
    return uptrim(std::move(r));
}

// Rabin irreducibility test over any constructed context
inline bool is_irreducible(const UPoly& f, const FieldCtx& K) {
    int d = updeg(f);
    if (d < 1) return false;
    if (!f[std::size_t(d)].is_one())
        throw std::invalid_argument("irreducibility test expects a monic polynomial");
    if (d == 1) return true;
    const u64 Q = K.size();
    UPoly x = {K.zero(), K.one()};
    // x^(Q^d) must equal x mod f
    UPoly h = x;
    for (int i = 0; i < d; ++i) h = uppowmod(h, Q, f, K);
    if (updeg(upsub(h, x, K)) >= 0) return false;
    // and for every prime r | d, gcd(x^(Q^(d/r)) - x, f) must be 1
    int rem = d;
    std::vector<int> primes;
    for (int r = 2; r * r <= rem; ++r)
        while (rem % r == 0) { if (primes.empty() || primes.back() != r) primes.push_back(r); rem /= r; }
    if (rem > 1) primes.push_back(rem);
    for (int r : primes) {
        UPoly g = x;
        for (int i = 0; i < d / r; ++i) g = uppowmod(g, Q, f, K);
        UPoly diff = upsub(g, x, K);
        if (updeg(diff) < 0) return false;  // splits too early
        if (updeg(upgcd(f, diff, K)) != 0) return false;
    }
    return true;
}

// smallest monic irreducible of the given degree, in the deterministic
// little-endian-lex order on the non-leading coefficient vector
inline UPoly find_irreducible(const FieldCtx& K, int degree) {
    if (degree < 1) throw std::invalid_argument("degree must be positive");
    if (degree == 1) {
        return {K.zero(), K.one()};  // x itself
    }
    std::vector<FieldElem> elems = K.enumerate();
    std::vector<std::size_t> idx(std::size_t(degree), 0);
    while (true) {
        UPoly f;
        f.reserve(std::size_t(degree) + 1);
        for (int i = 0; i < degree; ++i) f.push_back(elems[idx[std::size_t(i)]]);
        f.push_back(K.one());
        if (is_irreducible(f, K)) return f;
        int pos = degree - 1;
        while (pos >= 0 && ++idx[std::size_t(pos)] == elems.size()) idx[std::size_t(pos--)] = 0;
        if (pos < 0) break;
    }
    throw std::runtime_error("no irreducible polynomial found (unreachable)");
}

// ---- embeddings and extensions ------------------------------------------

// map an element of a subfield context into a containing context built over it
inline FieldElem embed(const FieldElem& x, const FieldCtx& target) {
    const auto* from = x.impl().get();
    const auto* to = target.impl().get();
    if (from == to) return x;
    if (from->k == 1 && from->p == to->p) return target.from_int(x.coeffs()[0]);
    if (to->parent) {
        FieldCtx parent_ctx(to->parent);
        FieldElem in_parent = embed(x, parent_ctx);  // throws when unrelated
        FieldElem img(target.impl(), to->parent_gen_image);
        FieldElem acc = target.zero();
        const auto& c = in_parent.coeffs();
        for (int i = int(c.size()) - 1; i >= 0; --i)
            acc = acc * img + target.from_int(c[std::size_t(i)]);
        return acc;
    }
    throw std::invalid_argument("no embedding path between field contexts");
}

namespace detail {

// lex-smallest root in K of an F_p-polynomial, by exhaustive scan
inline FieldElem smallest_root_fp(const std::vector<i64>& poly, const FieldCtx& K) {
    for (const FieldElem& x : K.enumerate()) {
        FieldElem acc = K.zero();
        for (int i = int(poly.size()) - 1; i >= 0; --i)
            acc = acc * x + K.from_int(poly[std::size_t(i)]);
        if (acc.is_zero()) return x;
    }
    throw std::invalid_argument("polynomial has no root in the target field");
}

inline FieldElem smallest_root(const UPoly& f, const FieldCtx& K) {
    for (const FieldElem& x : K.enumerate())
        if (upeval(f, x).is_zero()) return x;
    throw std::invalid_argument("polynomial has no root in the target field");
}

} // namespace detail

struct ExtField {
    FieldCtx field;
    FieldElem alpha;  // image of the adjoined root
};

// F = base[T]/(M).  The result is flattened over the prime field; the base
// embeds via `embed`, and the adjoined root's image is returned alongside.
inline ExtField extend_field(const FieldCtx& base, const UPoly& M) {
    int d = updeg(M);
    if (d < 1) throw std::invalid_argument("extension modulus must be non-constant");
    if (!M[std::size_t(d)].is_one())
        throw std::invalid_argument("extension modulus must be monic");
    for (const auto& c : M)
        if (c.impl().get() != base.impl().get())
            throw std::invalid_argument("modulus coefficients must lie in the base context");
    if (!is_irreducible(M, base))
        throw std::invalid_argument("extension modulus must be irreducible over the base");

    static std::mutex m;
    static std::map<std::pair<u64, std::vector<std::vector<i64>>>, ExtField> registry;
    std::vector<std::vector<i64>> key_m;
    for (const auto& c : M) key_m.push_back(c.coeffs());
    auto key = std::make_pair(base.id(), key_m);
    {
        std::lock_guard<std::mutex> lock(m);
        auto it = registry.find(key);
        if (it != registry.end()) return it->second;
    }

    ExtField result;
    if (d == 1) {
        result = ExtField{base, -M[0]};
    } else if (base.k() == 1) {
        // use M itself as the defining modulus; the root is the generator
        std::vector<i64> mod;
        mod.reserve(M.size());
        for (const auto& c : M) mod.push_back(c.coeffs()[0]);
        FieldCtx K(detail::build_impl(base.p(), std::move(mod), base.impl(), {0}));
        result = ExtField{K, K.gen()};
    } else {
        const i64 p = base.p();
        const int kd = base.k() * d;
        FieldCtx prime = make_prime_field(p);
        UPoly mod_p = find_irreducible(prime, kd);
        std::vector<i64> mod;
        mod.reserve(mod_p.size());
        for (const auto& c : mod_p) mod.push_back(c.coeffs()[0]);
        FieldCtx K(detail::build_impl(p, std::move(mod), nullptr, {}));
        // locate the base inside K: lex-smallest root of the base modulus
        FieldElem base_gen_img = detail::smallest_root_fp(base.modulus(), K);
        auto impl2 = std::make_shared<detail::CtxImpl>(*K.impl());
        impl2->id = detail::next_ctx_id();
        impl2->parent = base.impl();
        impl2->parent_gen_image = base_gen_img.coeffs();
        FieldCtx K2(impl2);
        // alpha: lex-smallest root of M with coefficients pushed through
        UPoly M_in_K2;
        M_in_K2.reserve(M.size());
        for (const auto& c : M) M_in_K2.push_back(embed(c, K2));
        FieldElem alpha = detail::smallest_root(M_in_K2, K2);
        result = ExtField{K2, alpha};
    }
    std::lock_guard<std::mutex> lock(m);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
    registry.emplace(std::move(key), result);
    return result;
}

// degree-2 extension with deterministic modulus choice over the prime field
inline FieldCtx quadratic_extension(const FieldCtx& base) {
    static std::mutex m;
    static std::map<u64, FieldCtx> registry;
    {
        std::lock_guard<std::mutex> lock(m);
        auto it = registry.find(base.id());
        if (it != registry.end()) return it->second;
    }
    const i64 p = base.p();
    const int kk = 2 * base.k();
    FieldCtx prime = make_prime_field(p);
    UPoly mod_p = find_irreducible(prime, kk);
    std::vector<i64> mod;
    mod.reserve(mod_p.size());
    for (const auto& c : mod_p) mod.push_back(c.coeffs()[0]);
    FieldCtx K(detail::build_impl(p, std::move(mod), nullptr, {}));
    std::vector<i64> gen_img;
    if (base.k() == 1) {
        gen_img = {0};
    } else {
        gen_img = detail::smallest_root_fp(base.modulus(), K).coeffs();
    }
    auto impl2 = std::make_shared<detail::CtxImpl>(*K.impl());
    impl2->id = detail::next_ctx_id();
    impl2->parent = base.impl();
    impl2->parent_gen_image = std::move(gen_img);
    FieldCtx K2(impl2);
    std::lock_guard<std::mutex> lock(m);
    auto it = registry.find(base.id());
    if (it != registry.end()) return it->second;
    registry.emplace(base.id(), K2);
    return K2;
}

// x -> x^q where q is the size of the designated base context
inline FieldElem frobenius(const FieldElem& x, const FieldCtx& q_ctx) {
    if (!detail::ctx_compatible(q_ctx.impl().get(), x.impl().get()))
        throw std::invalid_argument("frobenius: element does not lie over the given base");
    return x.pow(q_ctx.size());
}

} // namespace towerforge
