#pragma once

// Skew polynomial arithmetic with twist a -> a^q and the rank-2 family
// phi_T = u tau^2 + (u+T) tau + T, giving a supersingularity oracle that is
// independent of the p_i machinery.

#include "deuring.hpp"

namespace towerforge {

class SkewPoly {
public:
    SkewPoly(FieldCtx K, u64 q) : K_(std::move(K)), q_(q) { validate_twist(); }
    SkewPoly(FieldCtx K, u64 q, std::vector<FieldElem> coeffs)
        : K_(std::move(K)), q_(q), c_(std::move(coeffs)) {
        validate_twist();
        for (const auto& x : c_)
            if (x.impl().get() != K_.impl().get())
                throw std::invalid_argument("skew coefficient in wrong field");
        trim();
    }

    static SkewPoly constant(const FieldCtx& K, u64 q, const FieldElem& c) {
        return SkewPoly(K, q, {c});
    }
    static SkewPoly tau(const FieldCtx& K, u64 q, int power = 1) {
        std::vector<FieldElem> c(std::size_t(power) + 1, K.zero());
        c.back() = K.one();
        return SkewPoly(K, q, std::move(c));
    }

    const FieldCtx& field() const { return K_; }
    u64 twist() const { return q_; }
    int degree() const { return int(c_.size()) - 1; }  // -1 for the zero polynomial
    bool is_zero() const { return c_.empty(); }
    FieldElem coeff(int i) const {
        if (i < 0 || i >= int(c_.size())) return K_.zero();
        return c_[std::size_t(i)];
    }
    const std::vector<FieldElem>& coeffs() const { return c_; }

    friend bool operator==(const SkewPoly& a, const SkewPoly& b) {
        a.check(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const SkewPoly& a, const SkewPoly& b) { return !(a == b); }

    friend SkewPoly operator+(const SkewPoly& a, const SkewPoly& b) {
        a.check(b);
        std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()), a.K_.zero());
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i < a.c_.size()) c[i] = c[i] + a.c_[i];
            if (i < b.c_.size()) c[i] = c[i] + b.c_[i];
        }
        return SkewPoly(a.K_, a.q_, std::move(c));
    }
    friend SkewPoly operator-(const SkewPoly& a, const SkewPoly& b) {
        a.check(b);
        std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()), a.K_.zero());
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i < a.c_.size()) c[i] = c[i] + a.c_[i];
            if (i < b.c_.size()) c[i] = c[i] - b.c_[i];
        }
        return SkewPoly(a.K_, a.q_, std::move(c));
    }

    // tau a = a^q tau: coefficient of tau^k is sum over i+j=k of a_i b_j^(q^i)
    friend SkewPoly operator*(const SkewPoly& a, const SkewPoly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return SkewPoly(a.K_, a.q_);
        std::vector<FieldElem> c(a.c_.size() + b.c_.size() - 1, a.K_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                FieldElem t = b.c_[j];
                for (std::size_t k = 0; k < i; ++k) t = t.pow(a.q_);
                c[i + j] = c[i + j] + a.c_[i] * t;
            }
        }
        return SkewPoly(a.K_, a.q_, std::move(c));
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const FieldElem& x = c_[std::size_t(i)];
            if (x.is_zero()) continue;
            if (!out.empty()) out += " + ";
            std::string cs = x.to_string();
            if (i == 0) { out += cs; continue; }
            if (cs != "1") {
                if (cs.find('+') != std::string::npos) out += "(" + cs + ")";
                else out += cs;
                out += "*";
            }
            out += i == 1 ? "tau" : "tau^" + std::to_string(i);
        }
        return out.empty() ? "0" : out;
    }

private:
    void validate_twist() const {
        u64 p = u64(K_.p());
        u64 t = q_;
        while (t > 1 && t % p == 0) t /= p;
        if (t != 1) throw std::invalid_argument("twist must be a power of the characteristic");
    }
    void check(const SkewPoly& o) const {
        if (K_.impl().get() != o.K_.impl().get() || q_ != o.q_)
            throw std::invalid_argument("skew polynomial context mismatch");
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    FieldCtx K_;
    u64 q_;
    std::vector<FieldElem> c_;
};

// phi_T = u tau^2 + (u+alpha) tau + alpha over a field K containing F_L
class DrinfeldModule {
public:
    DrinfeldModule(FieldCtx q_ctx, UPoly L, FieldCtx K, FieldElem u)
        : q_ctx_(std::move(q_ctx)), L_(std::move(L)), K_(std::move(K)), u_(std::move(u)) {
        if (updeg(L_) < 1 || !L_[std::size_t(updeg(L_))].is_one())
            throw std::invalid_argument("L must be a monic polynomial of positive degree");
        for (const auto& c : L_)
            if (c.impl().get() != q_ctx_.impl().get())
                throw std::invalid_argument("L has wrong coefficient field");
        if (!is_irreducible(L_, q_ctx_))
            throw std::invalid_argument("L must be irreducible");
        if (is_poly_T(L_)) throw std::invalid_argument("L = T is excluded");
        if (u_.impl().get() != K_.impl().get())
            throw std::invalid_argument("u must live in the given field");
        if (u_.is_zero()) throw std::invalid_argument("u = 0 is not rank 2");
        alpha_ = embed(extend_field(q_ctx_, L_).alpha, K_);
    }

    u64 q() const { return q_ctx_.size(); }
    int d() const { return updeg(L_); }
    const FieldElem& u() const { return u_; }
    const FieldElem& alpha() const { return alpha_; }
    const FieldCtx& field() const { return K_; }

    SkewPoly phi_T() const {
        return SkewPoly(K_, q(), {alpha_, u_ + alpha_, u_});
    }

    FieldElem j_invariant() const {
        return (u_ + alpha_).pow(q() + 1) / u_;
    }

    // the ring homomorphism F_q[T] -> K{tau}, T -> phi_T, by Horner
    SkewPoly phi_image(const UPoly& f) const {
        int n = updeg(f);
        if (n < 0) return SkewPoly(K_, q());
        SkewPoly pt = phi_T();
        SkewPoly acc = SkewPoly::constant(K_, q(), embed(f[std::size_t(n)], K_));
        for (int i = n - 1; i >= 0; --i)
            acc = acc * pt + SkewPoly::constant(K_, q(), embed(f[std::size_t(i)], K_));
        return acc;
    }

    SkewPoly phi_L() const { return phi_image(L_); }

    // supersingular iff phi_L is a pure tau^{2d} term
    bool is_supersingular() const {
        SkewPoly s = phi_L();
        if (s.degree() != 2 * d()) return false;
        for (int i = 0; i < 2 * d(); ++i)
            if (!s.coeff(i).is_zero()) return false;
        return true;
    }

private:
    FieldCtx q_ctx_;
    UPoly L_;
    FieldCtx K_;
    FieldElem u_;
    FieldElem alpha_;
};

struct SupersingularReport {
    UPoly L;
    u64 q = 0;
    u64 m_d = 0;
    FieldCtx field;                   // F_L^(2): where the u-values live
    std::vector<FieldElem> u_values;  // oracle scan, element order
    std::vector<FieldElem> via_p_d;   // u = -rho alpha^q for roots rho of p_d^(L)
    bool agree = false;
};

// The supersingular locus computed both ways: by the skew oracle over
// F_L^(2)^*, and via the correspondence u <-> root -u/alpha^q of p_d^(L).
// The roots of p_d^(L) fill up F_L^(2), so that is where u must range; over
// F_L itself the scan comes up short of m_d.
inline SupersingularReport supersingular_u_set(const DeuringFamily& fam, const UPoly& L) {
    fam.validate_prime(L, true);
    const FieldCtx& q_ctx = fam.base();
    int d = updeg(L);
    SupersingularReport rep;
    rep.L = L;
    rep.q = fam.q();
    rep.m_d = fam.m(d);

    ExtField FL = extend_field(q_ctx, L);
    rep.field = quadratic_extension(FL.field);
    FieldElem alpha = embed(FL.alpha, rep.field);

    for (const auto& u : rep.field.enumerate()) {
        if (u.is_zero()) continue;
        DrinfeldModule mod(q_ctx, L, rep.field, u);
        if (mod.is_supersingular()) rep.u_values.push_back(u);
    }

    MPoly pd = fam.p_mod(L, d);
    RootReport roots = distinct_roots(pd, rep.field);
    FieldElem neg = rep.field.from_int(-1);
    FieldElem aq = alpha.pow(fam.q());
    for (const auto& rho : roots.roots) rep.via_p_d.push_back(neg * rho * aq);
    std::sort(rep.via_p_d.begin(), rep.via_p_d.end());

    rep.agree = rep.u_values == rep.via_p_d;
    return rep;
}

} // namespace towerforge
