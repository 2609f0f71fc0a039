#pragma once

// The Deuring-analogue polynomial family p_i(s) over F_q(T): both recursions,
// reductions mod a prime L, the key identity in Theorem 15 form, and the
// splitting sets the family defines.

#include "polys.hpp"

#include <mutex>
#include <random>

namespace towerforge {

namespace detail {
inline u64 upow(u64 b, int e) {
    u64 r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}
} // namespace detail

// (q^d - 1)/(q - 1)
inline u64 geometric_m(u64 q, int d) {
    u64 m = 0, pw = 1;
    for (int i = 0; i < d; ++i) { m += pw; pw *= q; }
    return m;
}

inline UPoly poly_T(const FieldCtx& K) { return UPoly{K.zero(), K.one()}; }

inline bool is_poly_T(const UPoly& L) {
    return updeg(L) == 1 && L[0].is_zero() && L[1].is_one();
}

// all monic irreducibles of the exact degree, in enumeration order
inline std::vector<UPoly> monic_irreducibles(const FieldCtx& K, int degree) {
    if (degree < 1) throw std::invalid_argument("degree must be positive");
    std::vector<UPoly> out;
    auto elems = K.enumerate();
    std::vector<std::size_t> idx(std::size_t(degree), 0);
    while (true) {
        UPoly cand;
        for (int i = 0; i < degree; ++i) cand.push_back(elems[idx[std::size_t(i)]]);
        cand.push_back(K.one());
        if (is_irreducible(cand, K)) out.push_back(cand);
        int pos = degree - 1;
        while (pos >= 0 && ++idx[std::size_t(pos)] == elems.size()) idx[std::size_t(pos--)] = 0;
        if (pos < 0) break;
    }
    return out;
}

inline std::string upoly_to_string(const UPoly& f, const FieldCtx& K) {
    if (f.empty()) return "0";
    return from_upoly(K, f, Var::T).to_string();
}

inline FieldElem eval_embedded(const MPoly& f, const std::map<Var, FieldElem>& pt,
                               const FieldCtx& K) {
    FieldElem acc = K.zero();
    for (const auto& [e, c] : f.terms()) {
        FieldElem t = embed(c, K);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) t = t * pt.at(f.vars()[i]).pow(e[i]);
        acc = acc + t;
    }
    return acc;
}

inline UPoly embed_upoly(const UPoly& f, const FieldCtx& K) {
    UPoly out;
    out.reserve(f.size());
    for (const auto& c : f) out.push_back(embed(c, K));
    return out;
}

struct SplitSet {
    UPoly L;
    char tag = 'E';  // 'E' or 'F'
    FieldCtx field;
    std::vector<FieldElem> members;  // deterministic element order
    u64 predicted = 0;
    u64 actual = 0;
};

struct Prop13Report {
    int d = 0;
    u64 m_d = 0;
    FieldCtx field;                // F_L^(2), where the roots were sought
    std::vector<FieldElem> roots;
    std::vector<bool> simple;
    FieldElem at_zero;             // value of p_d^(L) at s = 0
    bool all_simple = false;
    bool zero_ok = false;
    bool count_ok = false;
    bool pass = false;
};

struct Thm15Report {
    bool ok = false;
    RatFun difference;  // zero iff ok
};

class DeuringFamily {
public:
    explicit DeuringFamily(FieldCtx q_ctx) : q_(std::move(q_ctx)) {}

    DeuringFamily(const DeuringFamily&) = delete;
    DeuringFamily& operator=(const DeuringFamily&) = delete;

    const FieldCtx& base() const { return q_; }
    u64 q() const { return q_.size(); }
    u64 m(int d) const { return geometric_m(q(), d); }

    // largest index whose degree (q^i-1)/(q-1) stays under the guard
    int i_max() const {
        int i = 0;
        while (geometric_m(q(), i + 1) < kDegreeGuard) ++i;
        return i;
    }

    // p_i by the depth-two recursion; represented over F_q(T) as a rational
    // function whose denominator is a power of T
    RatFun p_exact(int i) const {
        check_index(i);
        std::lock_guard<std::mutex> lock(mu_);
        ensure_exact(i);
        return cache_[std::size_t(i + 1)];
    }

    // p_i by the depth-one recursion, Laurent substitution cleared exactly
    RatFun p_exact_depth1(int i) const {
        if (i < 0) throw std::invalid_argument("depth-one recursion starts at index 0");
        check_index(i);
        std::lock_guard<std::mutex> lock(mu_);
        ensure_depth1(i);
        return cache1_[std::size_t(i)];
    }

    // p_i(s(s+1)^{q-1}) - (T(s+1))^{q^i-1} p_i(s^q/(T(s+1))^{q-1})
    //   = (T^{q^i-1} - 1)(s+1)^{q^i-1} p_{i-1}(s^q/(T(s+1))^{q-1})
    Thm15Report verify_theorem15(int i) const {
        if (i < 0) throw std::invalid_argument("index must be nonnegative");
        RatFun pi = p_exact(i);
        RatFun pim1 = p_exact(i - 1);
        u64 e = detail::upow(q(), i) - 1;
        MPoly s = MPoly::variable(q_, Var::s);
        MPoly T = MPoly::variable(q_, Var::T);
        MPoly one = MPoly::constant(q_, 1);
        MPoly sp1 = s + one;
        RatFun arg1(s * sp1.pow(q() - 1));
        RatFun arg2(s.pow(q()), (T * sp1).pow(q() - 1));
        RatFun lhs = substitute(pi, {{Var::s, arg1}}) -
                     RatFun((T * sp1).pow(e)) * substitute(pi, {{Var::s, arg2}});
        RatFun rhs = RatFun((T.pow(e) - one) * sp1.pow(e)) * substitute(pim1, {{Var::s, arg2}});
        RatFun diff = lhs - rhs;
        return {diff.is_zero(), diff};
    }

    // the same identity sampled at denominator-avoiding points of an
    // extension field; catches transcription slips at indices where the
    // exact expansion is too large
    bool verify_theorem15_random(int i, u64 seed, int npoints = 20) const {
        if (i < 0) throw std::invalid_argument("index must be nonnegative");
        int extdeg = 1;
        u64 sz = q();
        while (sz < 64) { sz *= q(); ++extdeg; }
        FieldCtx K = extdeg == 1 ? q_ : extend_field(q_, find_irreducible(q_, extdeg)).field;
        RatFun pi = p_exact(i);
        RatFun pim1 = p_exact(i - 1);
        u64 e = detail::upow(q(), i) - 1;
        auto elems = K.enumerate();
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
        FieldElem one = K.one();
        int accepted = 0;
        while (accepted < npoints) {
            FieldElem sv = elems[pick(rng)];
            FieldElem tv = elems[pick(rng)];
            if (tv.is_zero() || (sv + one).is_zero()) continue;
            ++accepted;
            FieldElem a = sv * (sv + one).pow(q() - 1);
            FieldElem b = sv.pow(q()) / (tv * (sv + one)).pow(q() - 1);
            FieldElem lhs = eval_p(pi, a, tv, K) -
                            (tv * (sv + one)).pow(e) * eval_p(pi, b, tv, K);
            FieldElem rhs = (tv.pow(e) - one) * (sv + one).pow(e) * eval_p(pim1, b, tv, K);
            if (lhs != rhs) return false;
        }
        return true;
    }

    // depth-one recursion in its reflected form, cleared by (sT^{q-1})^{m_i}:
    // (sT^{q-1})^{m_i} p_i(1/(T^{q-1}s)) = (-1)^{i+1} p_{i-1}(s)
    //                                      - (sT^{q-1})^{m_i} p_{i-1}(1/(T^{q-1}s))
    bool check_eq10(int i) const {
        if (i < 1) throw std::invalid_argument("index must be at least 1");
        RatFun pi = p_exact(i);
        RatFun pim1 = p_exact(i - 1);
        u64 mi = m(i);
        MPoly s = MPoly::variable(q_, Var::s);
        MPoly T = MPoly::variable(q_, Var::T);
        RatFun inv(MPoly::constant(q_, 1), T.pow(q() - 1) * s);
        RatFun clear((s * T.pow(q() - 1)).pow(mi));
        FieldElem sign = q_.from_int(i % 2 == 0 ? -1 : 1);  // (-1)^{i+1}
        RatFun lhs = clear * substitute(pi, {{Var::s, inv}});
        RatFun rhs = RatFun(MPoly::constant(q_, sign)) * pim1 -
                     clear * substitute(pim1, {{Var::s, inv}});
        return lhs == rhs;
    }

    // reduction mod L: coefficients land in F_L, T becomes a root of L
    MPoly p_mod(const UPoly& L, int i) const {
        validate_prime(L, true);
        check_index(i);
        std::vector<std::vector<i64>> key;
        for (const auto& c : L) key.push_back(c.coeffs());
        {
            std::lock_guard<std::mutex> lock(mod_mu_);
            auto it = mod_cache_.find({key, i});
            if (it != mod_cache_.end()) return it->second;
        }
        ExtField FL = extend_field(q_, L);
        MPoly red = reduce_mod_L(p_exact(i), FL.field, FL.alpha);
        std::lock_guard<std::mutex> lock(mod_mu_);
        mod_cache_.emplace(std::make_pair(key, i), red);
        return red;
    }

    Prop13Report check_prop13(const UPoly& L) const {
        Prop13Report rep;
        rep.d = updeg(L);
        rep.m_d = m(rep.d);
        MPoly f = p_mod(L, rep.d);
        FieldCtx FL = extend_field(q_, L).field;
        rep.field = quadratic_extension(FL);
        RootReport rr = distinct_roots(f, rep.field);
        rep.roots = rr.roots;
        rep.simple = rr.simple;
        rep.all_simple = rr.all_simple;
        rep.at_zero = eval_embedded(f, {{Var::s, FL.zero()}}, FL);
        rep.zero_ok = !rep.at_zero.is_zero();
        rep.count_ok = rep.roots.size() == rep.m_d;
        rep.pass = rep.all_simple && rep.zero_ok && rep.count_ok;
        return rep;
    }

    // tag E: {a in K : p_d^(L)(a(a+1)^{q-1}) = 0}
    // tag F: {a in K : p_d^(L)((a^q+a)^{q-1}) = 0}
    SplitSet splitting_set(const UPoly& L, char tag, const FieldCtx& K) const {
        if (tag != 'E' && tag != 'F') throw std::invalid_argument("tag must be E or F");
        int d = updeg(L);
        MPoly f = p_mod(L, d);
        UPoly uf = embed_upoly(to_upoly(f, Var::s), K);
        SplitSet out;
        out.L = L;
        out.tag = tag;
        out.field = K;
        out.predicted = tag == 'E' ? q() * m(d) : q() * (q() - 1) * m(d);
        FieldElem one = K.one();
        for (const auto& a : K.enumerate()) {
            FieldElem t = tag == 'E' ? a * (a + one).pow(q() - 1)
                                     : (a.pow(q()) + a).pow(q() - 1);
            if (upeval(uf, t).is_zero()) out.members.push_back(a);
        }
        out.actual = out.members.size();
        return out;
    }

    SplitSet splitting_set(const UPoly& L, char tag) const {
        FieldCtx FL = extend_field(q_, L).field;
        return splitting_set(L, tag, quadratic_extension(FL));
    }

    // the literal reading "p_d^(L)(a^q + a) = 0", kept for comparison with
    // the adopted F-set above
    std::vector<FieldElem> f_set_direct(const UPoly& L, const FieldCtx& K) const {
        int d = updeg(L);
        MPoly f = p_mod(L, d);
        UPoly uf = embed_upoly(to_upoly(f, Var::s), K);
        std::vector<FieldElem> out;
        for (const auto& a : K.enumerate())
            if (upeval(uf, a.pow(q()) + a).is_zero()) out.push_back(a);
        return out;
    }

    void validate_prime(const UPoly& L, bool forbid_T) const {
        if (updeg(L) < 1) throw std::invalid_argument("prime must have positive degree");
        for (const auto& c : L)
            if (c.impl().get() != q_.impl().get())
                throw std::invalid_argument("prime has wrong coefficient field");
        if (!L[std::size_t(updeg(L))].is_one())
            throw std::invalid_argument("prime must be monic");
        if (!is_irreducible(L, q_)) throw std::invalid_argument("polynomial is not irreducible");
        if (forbid_T && is_poly_T(L))
            throw std::invalid_argument("L = T is excluded (denominators are powers of T)");
    }

private:
    void check_index(int i) const {
        if (i < -1) throw std::invalid_argument("index must be at least -1");
        if (i >= 1 && geometric_m(q(), i) >= kDegreeGuard)
            throw guard_error("p_i degree guard exceeded (2^14)");
    }

    void ensure_exact(int i) const {
        if (cache_.empty()) {
            cache_.push_back(RatFun::zero(q_));      // p_{-1}
            cache_.push_back(RatFun::constant(q_, 1));  // p_0
        }
        MPoly one = MPoly::constant(q_, 1);
        while (int(cache_.size()) < i + 2) {
            int j = int(cache_.size()) - 2;  // next index to fill is j+1
            u64 qj = detail::upow(q(), j);
            MPoly sq = MPoly::variable(q_, Var::s, std::uint32_t(qj));
            MPoly Te = MPoly::variable(q_, Var::T, std::uint32_t(qj - 1));
            RatFun a = RatFun(sq - one) * cache_[std::size_t(j + 1)];
            RatFun b = RatFun(Te - one, Te) * RatFun(sq) * cache_[std::size_t(j)];
            cache_.push_back(a + b);
        }
    }

    void ensure_depth1(int i) const {
        if (cache1_.empty()) cache1_.push_back(RatFun::constant(q_, 1));  // p_0
        MPoly s = MPoly::variable(q_, Var::s);
        MPoly T = MPoly::variable(q_, Var::T);
        while (int(cache1_.size()) < i + 1) {
            int j = int(cache1_.size());  // next index
            const RatFun& prev = cache1_.back();
            RatFun inv(MPoly::constant(q_, 1), T.pow(q() - 1) * s);
            RatFun comp = substitute(prev, {{Var::s, inv}});
            FieldElem sign = q_.from_int(j % 2 == 0 ? -1 : 1);  // (-1)^{j+1}
            RatFun r = RatFun(sign * s.pow(m(j))) * comp - prev;
            cache1_.push_back(std::move(r));
        }
    }

    FieldElem eval_p(const RatFun& p, const FieldElem& sval, const FieldElem& tval,
                     const FieldCtx& K) const {
        std::map<Var, FieldElem> pt = {{Var::s, sval}, {Var::T, tval}};
        FieldElem d = eval_embedded(p.den(), pt, K);
        return eval_embedded(p.num(), pt, K) / d;
    }

    FieldCtx q_;
    mutable std::mutex mu_;
    mutable std::vector<RatFun> cache_;   // slot 0 holds p_{-1}
    mutable std::vector<RatFun> cache1_;  // slot 0 holds p_0
    mutable std::mutex mod_mu_;
    mutable std::map<std::pair<std::vector<std::vector<i64>>, int>, MPoly> mod_cache_;
};

// final remark of the splitting-locus discussion: every root of p_d^(L) over
// F_L^(2) is a (q-1)-st power there
inline bool roots_are_qm1_powers(const DeuringFamily& fam, const UPoly& L) {
    Prop13Report rep = fam.check_prop13(L);
    auto elems = rep.field.enumerate();
    for (const auto& r : rep.roots) {
        bool hit = false;
        for (const auto& b : elems)
            if (b.pow(fam.q() - 1) == r) { hit = true; break; }
        if (!hit) return false;
    }
    return true;
}

} // namespace towerforge
