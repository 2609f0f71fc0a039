#pragma once

// Sparse multivariate polynomials and rational functions over a field
// context.  The variable alphabet is fixed; term order is graded lex with
// that alphabet's priority, and the printed form is canonical: printing and
// re-parsing round-trips bit-exactly.

#include "fields.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace towerforge {

constexpr u64 kDegreeGuard = u64(1) << 14;  // per-variable degree cap

enum class Var : int { T = 0, s, t, u, u0, u1, v0, x, X, Y, Z, xi };

inline const char* var_name(Var v) {
    static const char* names[] = {"T", "s", "t", "u", "u0", "u1", "v0",
                                  "x", "X", "Y", "Z", "xi"};
    return names[int(v)];
}

inline std::optional<Var> var_from_name(const std::string& name) {
    for (int i = 0; i < 12; ++i)
        if (name == var_name(Var(i))) return Var(i);
    return std::nullopt;
}

using ExpVec = std::vector<std::uint32_t>;

namespace detail {

// strict order placing the graded-lex largest term first
struct GrlexDesc {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        u64 da = 0, db = 0;
        for (auto e : a) da += e;
        for (auto e : b) db += e;
        if (da != db) return da > db;
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return a.size() > b.size();  // unreachable for aligned keys
    }
};

} // namespace detail

class MPoly {
public:
    using TermMap = std::map<ExpVec, FieldElem, detail::GrlexDesc>;

    MPoly() = default;

    static MPoly zero(const FieldCtx& K) {
        MPoly f;
        f.ctx_ = K;
        return f;
    }
    static MPoly constant(const FieldCtx& K, const FieldElem& c) {
        MPoly f = zero(K);
        if (!c.is_zero()) f.terms_er({}, c);
        return f;
    }
    static MPoly constant(const FieldCtx& K, i64 c) { return constant(K, K.from_int(c)); }
    static MPoly variable(const FieldCtx& K, Var v, std::uint32_t e = 1) {
        if (e >= kDegreeGuard) throw guard_error("degree guard exceeded (2^14)");
        if (e == 0) return constant(K, 1);
        MPoly f = zero(K);
        f.vars_ = {v};
        f.terms_er({e}, K.one());
        return f;
    }

    const FieldCtx& ctx() const { return ctx_; }
    const std::vector<Var>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const { return terms_.empty() || vars_.empty(); }
    FieldElem constant_value() const {
        if (terms_.empty()) return ctx_.zero();
        if (!vars_.empty()) throw std::invalid_argument("polynomial is not constant");
        return terms_.begin()->second;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) {
        if (!a.ctx_.same(b.ctx_)) throw std::invalid_argument("polynomial context mismatch");
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    friend MPoly operator+(const MPoly& a, const MPoly& b) { return combined(a, b, false); }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return combined(a, b, true); }
    friend MPoly operator-(const MPoly& a) {
        MPoly r = a;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        if (!a.ctx_.same(b.ctx_)) throw std::invalid_argument("polynomial context mismatch");
        if (a.is_zero() || b.is_zero()) return zero(a.ctx_);
        auto [ea, eb, vars] = aligned(a, b);
        // degree guard: cheap upper bound per variable
        for (std::size_t i = 0; i < vars.size(); ++i) {
            u64 ma = 0, mb = 0;
            for (const auto& [e, c] : ea) ma = std::max<u64>(ma, e[i]);
            for (const auto& [e, c] : eb) mb = std::max<u64>(mb, e[i]);
            if (ma + mb >= kDegreeGuard) throw guard_error("degree guard exceeded (2^14)");
        }
        MPoly r = zero(a.ctx_);
        r.vars_ = vars;
        for (const auto& [e1, c1] : ea) {
            for (const auto& [e2, c2] : eb) {
                ExpVec e(e1);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
                FieldElem c = c1 * c2;
                auto it = r.terms_.find(e);
                if (it == r.terms_.end()) {
                    if (!c.is_zero()) r.terms_.emplace(std::move(e), c);
                } else {
                    it->second = it->second + c;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        }
        r.strip_vars();
        return r;
    }

    friend MPoly operator*(const MPoly& a, const FieldElem& c) {
        MPoly r = a;
        if (c.is_zero()) return zero(a.ctx_);
        for (auto& [e, v] : r.terms_) v = v * c;
        return r;
    }
    friend MPoly operator*(const FieldElem& c, const MPoly& a) { return a * c; }

    MPoly pow(u64 e) const {
        MPoly acc = constant(ctx_, ctx_.one());
        MPoly base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = e > 1 ? base * base : base;
            e >>= 1;
        }
        return acc;
    }

    u64 degree(Var v) const {
        int pos = var_pos(v);
        if (pos < 0) return 0;
        u64 d = 0;
        for (const auto& [e, c] : terms_) d = std::max<u64>(d, e[std::size_t(pos)]);
        return d;
    }
    u64 total_degree() const {
        u64 d = 0;
        for (const auto& [e, c] : terms_) {
            u64 s = 0;
            for (auto x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    // coefficient of v^e, as a polynomial in the remaining variables
    MPoly coeff_of(Var v, std::uint32_t want) const {
        int pos = var_pos(v);
        MPoly r = zero(ctx_);
        if (pos < 0) {
            if (want == 0) return *this;
            return r;
        }
        std::vector<Var> nv = vars_;
        nv.erase(nv.begin() + pos);
        r.vars_ = nv;
        for (const auto& [e, c] : terms_) {
            if (e[std::size_t(pos)] != want) continue;
            ExpVec ne(e);
            ne.erase(ne.begin() + pos);
            r.terms_.emplace(std::move(ne), c);
        }
        r.strip_vars();
        return r;
    }

    FieldElem leading_coeff() const {
        if (terms_.empty()) return ctx_.zero();
        return terms_.begin()->second;
    }

    FieldElem eval(const std::map<Var, FieldElem>& point) const {
        FieldElem acc = ctx_.zero();
        std::vector<FieldElem> vals;
        for (Var v : vars_) {
            auto it = point.find(v);
            if (it == point.end())
                throw std::invalid_argument(std::string("eval: unbound variable ") + var_name(v));
            vals.push_back(it->second);
        }
        for (const auto& [e, c] : terms_) {
            FieldElem term = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) term = term * vals[i].pow(e[i]);
            acc = acc + term;
        }
        return acc;
    }

    std::string to_string() const;

    // internal builders used by the parser and module constructors
    void add_term(const std::vector<std::pair<Var, std::uint32_t>>& mono, const FieldElem& c);

private:
    static MPoly combined(const MPoly& a, const MPoly& b, bool subtract) {
        if (!a.ctx_.same(b.ctx_)) throw std::invalid_argument("polynomial context mismatch");
        auto [ea, eb, vars] = aligned(a, b);
        MPoly r = zero(a.ctx_);
        r.vars_ = vars;
        r.terms_ = std::move(ea);
        for (const auto& [e, c] : eb) {
            FieldElem v = subtract ? -c : c;
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                if (!v.is_zero()) r.terms_.emplace(e, v);
            } else {
                it->second = it->second + v;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        r.strip_vars();
        return r;
    }

    // rewrite both term maps over the union variable list
    static std::tuple<TermMap, TermMap, std::vector<Var>> aligned(const MPoly& a, const MPoly& b) {
        std::vector<Var> vars;
        std::size_t i = 0, j = 0;
        while (i < a.vars_.size() || j < b.vars_.size()) {
            if (j == b.vars_.size() || (i < a.vars_.size() && a.vars_[i] < b.vars_[j]))
                vars.push_back(a.vars_[i++]);
            else if (i == a.vars_.size() || b.vars_[j] < a.vars_[i])
                vars.push_back(b.vars_[j++]);
            else { vars.push_back(a.vars_[i]); ++i; ++j; }
        }
        return {remap(a, vars), remap(b, vars), vars};
    }

    static TermMap remap(const MPoly& f, const std::vector<Var>& vars) {
        TermMap out;
        std::vector<int> where(vars.size(), -1);
        for (std::size_t i = 0; i < vars.size(); ++i) {
            for (std::size_t j = 0; j < f.vars_.size(); ++j)
                if (f.vars_[j] == vars[i]) where[i] = int(j);
        }
        for (const auto& [e, c] : f.terms_) {
            ExpVec ne(vars.size(), 0);
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (where[i] >= 0) ne[i] = e[std::size_t(where[i])];
            out.emplace(std::move(ne), c);
        }
        return out;
    }

    void strip_vars() {
        if (vars_.empty()) return;
        std::vector<bool> used(vars_.size(), false);
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) used[i] = true;
        bool all = true;
        for (bool b : used) all = all && b;
        if (all) return;
        std::vector<Var> nv;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (used[i]) nv.push_back(vars_[i]);
        TermMap nt;
        for (const auto& [e, c] : terms_) {
            ExpVec ne;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (used[i]) ne.push_back(e[i]);
            nt.emplace(std::move(ne), c);
        }
        vars_ = std::move(nv);
        terms_ = std::move(nt);
    }

    int var_pos(Var v) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == v) return int(i);
        return -1;
    }

    void terms_er(ExpVec e, const FieldElem& c) { terms_.emplace(std::move(e), c); }

    FieldCtx ctx_;
    std::vector<Var> vars_;  // ascending fixed-alphabet order
    TermMap terms_;          // canonical: no zero coefficients, no unused vars

    friend class RatFun;
};

inline void MPoly::add_term(const std::vector<std::pair<Var, std::uint32_t>>& mono,
                            const FieldElem& c) {
    MPoly t = constant(ctx_, c);
    for (const auto& [v, e] : mono) t = t * variable(ctx_, v, e);
    *this = *this + t;
}

// ---- printing -------------------------------------------------------------

inline std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::string coeff = c.to_string();
        bool has_vars = false;
        for (auto x : e) if (x) has_vars = true;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(vars_[i]);
            if (e[i] > 1) { mono += "^"; mono += std::to_string(e[i]); }
        }
        if (!has_vars) { out += coeff; continue; }
        if (coeff == "1") { out += mono; continue; }
        if (coeff.find('+') != std::string::npos) out += "(" + coeff + ")";
        else out += coeff;
        out += "*";
        out += mono;
    }
    return out;
}

// ---- rational functions ----------------------------------------------------

class RatFun {
public:
    RatFun() = default;
    explicit RatFun(const MPoly& num) : num_(num), den_(MPoly::constant(num.ctx(), 1)) {}
    RatFun(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
        if (!num_.ctx().same(den_.ctx())) throw std::invalid_argument("rational context mismatch");
        normalize();
    }

    static RatFun zero(const FieldCtx& K) { return RatFun(MPoly::zero(K)); }
    static RatFun constant(const FieldCtx& K, i64 c) { return RatFun(MPoly::constant(K, c)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    const FieldCtx& ctx() const { return num_.ctx(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant() && den_.constant_value().is_one(); }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a) { return RatFun(-a.num_, a.den_); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw std::invalid_argument("division by zero rational function");
        return RatFun(a.num_ * b.den_, a.den_ * b.num_);
    }

    // equality decided cross-multiplicatively: a/b = c/d iff ad - cb = 0
    friend bool operator==(const RatFun& a, const RatFun& b) {
        return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    FieldElem eval(const std::map<Var, FieldElem>& point) const {
        FieldElem d = den_.eval(point);
        if (d.is_zero()) throw std::invalid_argument("denominator vanishes at evaluation point");
        return num_.eval(point) / d;
    }

    std::string to_string() const {
        if (is_polynomial() || num_.is_zero()) return num_.to_string();
        return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
    }

private:
    // best effort: monomial content, shared univariate gcd, monic denominator
    void normalize() {
        const FieldCtx& K = num_.ctx();
        if (num_.is_zero()) { den_ = MPoly::constant(K, 1); return; }
        // common monomial content across numerator and denominator
        auto content = [](const MPoly& f) {
            std::map<Var, std::uint32_t> m;
            for (std::size_t i = 0; i < f.vars().size(); ++i) {
                std::uint32_t lo = ~std::uint32_t(0);
                for (const auto& [e, c] : f.terms()) lo = std::min(lo, e[i]);
                if (lo) m[f.vars()[i]] = lo;
            }
            return m;
        };
        auto cn = content(num_), cd = content(den_);
        std::map<Var, std::uint32_t> common;
        for (const auto& [v, e] : cn) {
            auto it = cd.find(v);
            if (it != cd.end()) common[v] = std::min(e, it->second);
        }
        if (!common.empty()) {
            num_ = divide_exact_monomial(num_, common);
            den_ = divide_exact_monomial(den_, common);
        }
        // shared single-variable gcd
        if (num_.vars().size() == 1 && den_.vars().size() == 1 &&
            num_.vars()[0] == den_.vars()[0]) {
            Var v = num_.vars()[0];
            UPoly un = upoly_of(num_, v), ud = upoly_of(den_, v);
            UPoly g = upgcd(un, ud, K);
            if (updeg(g) > 0) {
                un = updivmod(un, g, K).first;
                ud = updivmod(ud, g, K).first;
                num_ = from_upoly(K, un, v);
                den_ = from_upoly(K, ud, v);
            }
        }
        FieldElem lead = den_.leading_coeff();
        if (!lead.is_one()) {
            FieldElem inv = lead.inverse();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    static MPoly divide_exact_monomial(const MPoly& f, const std::map<Var, std::uint32_t>& m) {
        MPoly r = f;
        for (std::size_t i = 0; i < r.vars_.size(); ++i) {
            auto it = m.find(r.vars_[i]);
            if (it == m.end()) continue;
            MPoly::TermMap nt;
            for (const auto& [e, c] : r.terms_) {
                ExpVec ne(e);
                ne[i] -= it->second;
                nt.emplace(std::move(ne), c);
            }
            r.terms_ = std::move(nt);
        }
        r.strip_vars();
        return r;
    }

public:
    static UPoly upoly_of(const MPoly& f, Var v);
    static MPoly from_upoly(const FieldCtx& K, const UPoly& f, Var v);

private:
    MPoly num_, den_;
};

inline UPoly RatFun::upoly_of(const MPoly& f, Var v) {
    u64 d = f.degree(v);
    if (d >= kDegreeGuard) throw guard_error("degree guard exceeded (2^14)");
    for (Var w : f.vars())
        if (w != v) throw std::invalid_argument("polynomial is not univariate in the given variable");
    UPoly out(std::size_t(d) + 1, f.ctx().zero());
    for (const auto& [e, c] : f.terms())
        out[e.empty() ? 0 : e[0]] = c;
    return uptrim(out);
}

inline MPoly RatFun::from_upoly(const FieldCtx& K, const UPoly& f, Var v) {
    MPoly out = MPoly::zero(K);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero()) continue;
        out = out + f[i] * MPoly::variable(K, v, std::uint32_t(i));
    }
    return out;
}

inline UPoly to_upoly(const MPoly& f, Var v) { return RatFun::upoly_of(f, v); }
inline MPoly from_upoly(const FieldCtx& K, const UPoly& f, Var v) {
    return RatFun::from_upoly(K, f, v);
}

// ---- parsing ----------------------------------------------------------------

namespace detail {

struct Parser {
    const std::string& src;
    std::size_t pos = 0;
    const FieldCtx& K;

    void skip() { while (pos < src.size() && std::isspace(unsigned(src[pos]))) ++pos; }
    bool peek(char c) { skip(); return pos < src.size() && src[pos] == c; }
    bool take(char c) { if (peek(c)) { ++pos; return true; } return false; }

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what);
    }

    u64 integer() {
        skip();
        if (pos >= src.size() || !std::isdigit(unsigned(src[pos]))) fail("expected integer");
        u64 v = 0;
        while (pos < src.size() && std::isdigit(unsigned(src[pos]))) {
            v = v * 10 + u64(src[pos] - '0');
            if (v > (u64(1) << 40)) fail("integer literal too large");
            ++pos;
        }
        return v;
    }

    MPoly expr() {
        skip();
        bool neg = take('-');
        MPoly acc = term();
        if (neg) acc = -acc;
        while (true) {
            skip();
            if (take('+')) acc = acc + term();
            else if (take('-')) acc = acc - term();
            else break;
        }
        return acc;
    }

    MPoly term() {
        MPoly acc = factor();
        while (true) {
            skip();
            if (take('*')) acc = acc * factor();
            else break;
        }
        return acc;
    }

    MPoly factor() {
        MPoly b = base();
        skip();
        if (take('^')) {
            u64 e = integer();
            if (e >= kDegreeGuard) fail("exponent exceeds degree guard");
            return b.pow(e);
        }
        return b;
    }

    MPoly base() {
        skip();
        if (pos >= src.size()) fail("unexpected end of input");
        char c = src[pos];
        if (std::isdigit(unsigned(c))) return MPoly::constant(K, i64(integer()));
        if (take('(')) {
            MPoly inner = expr();
            if (!take(')')) fail("expected ')'");
            return inner;
        }
        if (std::isalpha(unsigned(c))) {
            // longest-match identifier over the fixed alphabet plus 'g'
            std::size_t len = 1;
            while (pos + len < src.size() &&
                   (std::isalnum(unsigned(src[pos + len]))))
                ++len;
            // try longest prefix that is a known name
            for (std::size_t l = std::min<std::size_t>(len, 2); l >= 1; --l) {
                std::string name = src.substr(pos, l);
                if (name == "g") {
                    if (K.k() == 1) fail("'g' needs an extension field context");
                    pos += l;
                    return MPoly::constant(K, K.gen());
                }
                if (auto v = var_from_name(name)) {
                    pos += l;
                    return MPoly::variable(K, *v);
                }
                if (l == 1) break;
            }
            fail("unknown identifier");
        }
        fail("unexpected character");
    }
};

} // namespace detail

inline MPoly parse_mpoly(const std::string& src, const FieldCtx& K) {
    detail::Parser p{src, 0, K};
    MPoly f = p.expr();
    p.skip();
    if (p.pos != src.size()) p.fail("trailing input");
    return f;
}

inline RatFun parse_ratfun(const std::string& src, const FieldCtx& K) {
    detail::Parser p{src, 0, K};
    MPoly num = p.expr();
    p.skip();
    if (p.take('/')) {
        MPoly den = p.expr();
        p.skip();
        if (p.pos != src.size()) p.fail("trailing input");
        return RatFun(num, den);
    }
    if (p.pos != src.size()) p.fail("trailing input");
    return RatFun(num);
}

// ---- substitution -------------------------------------------------------------

// Substitute rational functions for variables, exactly.  A binding may
// mention its own variable (the coefficients are extracted first), but not
// another substituted variable: the bindings are applied one after another,
// so cross-references would not mean simultaneous substitution.
inline RatFun substitute(const MPoly& f, const std::map<Var, RatFun>& bindings) {
    for (const auto& [v, rf] : bindings) {
        for (Var w : rf.num().vars())
            if (w != v && bindings.count(w))
                throw std::invalid_argument("cross-referencing substitution binding");
        for (Var w : rf.den().vars())
            if (w != v && bindings.count(w))
                throw std::invalid_argument("cross-referencing substitution binding");
    }
    MPoly num = f;
    MPoly den = MPoly::constant(f.ctx(), 1);
    for (const auto& [v, rf] : bindings) {
        bool present = false;
        for (Var w : num.vars()) present = present || w == v;
        if (!present) continue;
        u64 D = num.degree(v);
        // Horner over v: num = sum C_i v^i  ->  sum C_i n^i d^(D-i), den *= d^D
        const MPoly& n = rf.num();
        const MPoly& d = rf.den();
        MPoly acc = num.coeff_of(v, std::uint32_t(D));
        MPoly dpow = MPoly::constant(f.ctx(), 1);
        for (i64 i = i64(D) - 1; i >= 0; --i) {
            dpow = dpow * d;
            acc = acc * n + num.coeff_of(v, std::uint32_t(i)) * dpow;
        }
        num = std::move(acc);
        den = den * d.pow(D);
    }
    return RatFun(std::move(num), std::move(den));
}

inline RatFun substitute(const RatFun& f, const std::map<Var, RatFun>& bindings) {
    RatFun n = substitute(f.num(), bindings);
    RatFun d = substitute(f.den(), bindings);
    return n / d;
}

// ---- reduction T -> alpha ------------------------------------------------------

// Replace T by alpha and push the coefficients through the embedding into
// alpha's context.  The inputs' other variables survive unchanged.
inline MPoly reduce_mod_L(const MPoly& f, const FieldCtx& target, const FieldElem& alpha) {
    if (alpha.impl().get() != target.impl().get())
        throw std::invalid_argument("alpha must live in the target context");
    MPoly out = MPoly::zero(target);
    for (const auto& [e, c] : f.terms()) {
        FieldElem coeff = embed(c, target);
        std::vector<std::pair<Var, std::uint32_t>> mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (f.vars()[i] == Var::T) coeff = coeff * alpha.pow(e[i]);
            else mono.emplace_back(f.vars()[i], e[i]);
        }
        out.add_term(mono, coeff);
    }
    return out;
}

inline MPoly reduce_mod_L(const RatFun& f, const FieldCtx& target, const FieldElem& alpha) {
    MPoly num = reduce_mod_L(f.num(), target, alpha);
    MPoly den = reduce_mod_L(f.den(), target, alpha);
    if (!den.is_constant() || den.constant_value().is_zero())
        throw std::invalid_argument("denominator does not reduce to a nonzero constant");
    return num * den.constant_value().inverse();
}

// simultaneous renaming, so swaps are fine; two sources may share a target
inline MPoly rename_vars(const MPoly& f, const std::map<Var, Var>& renames) {
    MPoly out = MPoly::zero(f.ctx());
    for (const auto& [e, c] : f.terms()) {
        std::vector<std::pair<Var, std::uint32_t>> mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            Var v = f.vars()[i];
            auto it = renames.find(v);
            mono.emplace_back(it == renames.end() ? v : it->second, e[i]);
        }
        out.add_term(mono, c);
    }
    return out;
}

inline RatFun rename_vars(const RatFun& f, const std::map<Var, Var>& renames) {
    return RatFun(rename_vars(f.num(), renames), rename_vars(f.den(), renames));
}

// ---- roots, derivatives, division ----------------------------------------------

inline MPoly derivative(const MPoly& f, Var v) {
    MPoly out = MPoly::zero(f.ctx());
    int pos = -1;
    for (std::size_t i = 0; i < f.vars().size(); ++i)
        if (f.vars()[i] == v) pos = int(i);
    if (pos < 0) return out;
    for (const auto& [e, c] : f.terms()) {
        if (!e[std::size_t(pos)]) continue;
        FieldElem nc = c * f.ctx().from_int(i64(e[std::size_t(pos)]));
        if (nc.is_zero()) continue;
        std::vector<std::pair<Var, std::uint32_t>> mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            std::uint32_t ee = e[i];
            if (int(i) == pos) --ee;
            if (ee) mono.emplace_back(f.vars()[i], ee);
        }
        out.add_term(mono, nc);
    }
    return out;
}

struct RootReport {
    std::vector<FieldElem> roots;  // ascending deterministic element order
    std::vector<bool> simple;      // aligned with roots
    bool all_simple = true;
};

// exhaustive scan of the field; simplicity read off gcd(f, f')
inline RootReport distinct_roots(const MPoly& f, const FieldCtx& K) {
    if (f.vars().size() > 1)
        throw std::invalid_argument("root scan needs a univariate polynomial");
    Var v = f.vars().empty() ? Var::s : f.vars()[0];
    MPoly fk = f;
    if (!f.ctx().same(K)) {
        // lift coefficients along the embedding
        MPoly out = MPoly::zero(K);
        for (const auto& [e, c] : f.terms()) {
            std::vector<std::pair<Var, std::uint32_t>> mono;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) mono.emplace_back(f.vars()[i], e[i]);
            out.add_term(mono, embed(c, K));
        }
        fk = std::move(out);
    }
    RootReport rep;
    if (fk.is_zero()) throw std::invalid_argument("root scan of the zero polynomial");
    UPoly uf = to_upoly(fk, v);
    UPoly ud = upderiv(uf, K);
    UPoly g = upgcd(uf, ud, K);
    for (const auto& a : K.enumerate()) {
        if (!upeval(uf, a).is_zero()) continue;
        rep.roots.push_back(a);
        bool simp = updeg(g) < 0 ? false : !upeval(g, a).is_zero();
        rep.simple.push_back(simp);
        rep.all_simple = rep.all_simple && simp;
    }
    return rep;
}

// exact multivariate division; nullopt when not exactly divisible
inline std::optional<MPoly> exact_divide(const MPoly& f, const MPoly& g) {
    if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    MPoly rem = f;
    MPoly q = MPoly::zero(f.ctx());
    const auto& gt = *g.terms().begin();
    while (!rem.is_zero()) {
        // quotient monomial = LT(rem) / LT(g), else not exactly divisible
        std::map<Var, i64> exps;
        {
            const auto& [e, c] = *rem.terms().begin();
            for (std::size_t i = 0; i < e.size(); ++i) exps[rem.vars()[i]] += i64(e[i]);
        }
        for (std::size_t i = 0; i < gt.first.size(); ++i)
            exps[g.vars()[i]] -= i64(gt.first[i]);
        for (const auto& [v, e] : exps)
            if (e < 0) return std::nullopt;
        FieldElem qc = rem.terms().begin()->second / gt.second;
        MPoly qt = MPoly::constant(f.ctx(), qc);
        for (const auto& [v, e] : exps)
            if (e > 0) qt = qt * MPoly::variable(f.ctx(), v, std::uint32_t(e));
        q = q + qt;
        rem = rem - qt * g;
    }
    return q;
}

// repeated top reduction of f by g, which must be monic in var
inline MPoly pseudo_reduce(const MPoly& f, const MPoly& g, Var var) {
    u64 dg = g.degree(var);
    if (dg == 0) throw std::invalid_argument("pseudo_reduce: divisor free of the variable");
    MPoly lead = g.coeff_of(var, std::uint32_t(dg));
    if (!(lead.is_constant() && lead.constant_value().is_one()))
        throw std::invalid_argument("pseudo_reduce: divisor must be monic in the variable");
    MPoly r = f;
    while (true) {
        u64 df = r.degree(var);
        if (df < dg || r.is_zero()) break;
        MPoly c = r.coeff_of(var, std::uint32_t(df));
        MPoly shift = c * MPoly::variable(f.ctx(), var, std::uint32_t(df - dg)) * g;
        r = r - shift;
        if (r.degree(var) >= df && !r.is_zero())
            throw std::runtime_error("pseudo_reduce failed to decrease the degree");
    }
    return r;
}

// Sylvester resultant of f and g with respect to var, exact.  The
// determinant is expanded by Laplace along rows, memoised on the set of
// consumed columns; fine at desk scale (matrix order guard 16).
inline MPoly resultant(const MPoly& f, const MPoly& g, Var var) {
    const FieldCtx& K = f.ctx();
    if (f.is_zero() || g.is_zero()) return MPoly::zero(K);
    u64 m = f.degree(var), n = g.degree(var);
    if (m == 0 && n == 0) return MPoly::constant(K, 1);
    if (m + n > 16) throw guard_error("resultant guard: matrix order > 16");
    std::size_t N = std::size_t(m + n);
    // rows 0..n-1 carry f's coefficients, rows n..N-1 carry g's
    std::vector<std::vector<MPoly>> M(N, std::vector<MPoly>(N, MPoly::zero(K)));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j <= m; ++j)
            M[r][r + j] = f.coeff_of(var, std::uint32_t(m - j));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j <= n; ++j)
            M[n + r][r + j] = g.coeff_of(var, std::uint32_t(n - j));
    std::map<std::uint32_t, MPoly> memo;
    std::function<MPoly(std::uint32_t)> det = [&](std::uint32_t used) -> MPoly {
        std::size_t row = std::size_t(std::popcount(used));
        if (row == N) return MPoly::constant(K, 1);
        auto it = memo.find(used);
        if (it != memo.end()) return it->second;
        MPoly acc = MPoly::zero(K);
        int skipped = 0;
        for (std::size_t c = 0; c < N; ++c) {
            if (used >> c & 1) continue;
            if (!M[row][c].is_zero()) {
                MPoly sub = M[row][c] * det(used | (std::uint32_t(1) << c));
                acc = (skipped & 1) ? acc - sub : acc + sub;
            }
            ++skipped;
        }
        memo.emplace(used, acc);
        return acc;
    };
    return det(0);
}

// full factorization of a univariate polynomial by trial division over the
// enumerated irreducibles; desk scale (degree guard 12)
struct UnivarFactor {
    MPoly factor;
    int multiplicity;
};

inline std::vector<UnivarFactor> factor_univariate(const MPoly& f, Var v) {
    const FieldCtx& K = f.ctx();
    UPoly uf = to_upoly(f, v);
    int d = updeg(uf);
    if (d < 0) throw std::invalid_argument("cannot factor the zero polynomial");
    if (d > 12) throw guard_error("factorization guard: degree > 12");
    uf = upmonic(uf);
    std::vector<UnivarFactor> out;
    auto elems = K.enumerate();
    for (int dd = 1; dd <= d && updeg(uf) > 0; ++dd) {
        std::vector<std::size_t> idx(std::size_t(dd), 0);
        while (updeg(uf) > 0) {
            UPoly cand;
            for (int i = 0; i < dd; ++i) cand.push_back(elems[idx[std::size_t(i)]]);
            cand.push_back(K.one());
            if (is_irreducible(cand, K)) {
                int mult = 0;
                while (true) {
                    auto [q, r] = updivmod(uf, cand, K);
                    if (updeg(r) >= 0) break;
                    uf = q;
                    ++mult;
                }
                if (mult > 0) out.push_back({from_upoly(K, cand, v), mult});
            }
            int pos = dd - 1;
            while (pos >= 0 && ++idx[std::size_t(pos)] == elems.size()) idx[std::size_t(pos--)] = 0;
            if (pos < 0) break;
        }
    }
    return out;
}

} // namespace towerforge
