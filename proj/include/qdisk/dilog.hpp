/**
 * @file dilog.hpp
 * @brief Truncated-series verification of the quantum dilogarithm layer:
 *        the series Psi^q, conjugation automorphisms, the lattice map, and
 *        their composition against the closed transformation formulas.
 *
 * The torus here is the abstract double of a chart: rank 2m with
 * (e_i,e_j) = -4 eps_ij, (e_i,f_j) = -4 delta_ij, (f_i,f_j) = 0, so that
 * X_i = A^{e_i}, B_i = A^{f_i} satisfy the chart commutation relations with
 * q = w^4.
 */
#pragma once

#include "qdisk/polygon.hpp"
#include "qdisk/torus.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qdisk {

/// Power series in a central variable truncated at a fixed order, with
/// rational coefficients (the Psi^q Taylor coefficients have (q^{2i} - 1)
/// denominators).
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order) : c_(order + 1) {}

    static TruncatedSeries one(int order) {
        TruncatedSeries s(order);
        s.c_[0] = OmegaRational(1);
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const OmegaRational& operator[](int d) const { return c_[d]; }
    OmegaRational& operator[](int d) { return c_[d]; }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (int d = 0; d <= r.order(); ++d) {
            OmegaRational s;
            for (int t = 0; t <= d; ++t) s += a.c_[t] * b.c_[d - t];
            r.c_[d] = s;
        }
        return r;
    }
    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (int d = 0; d <= r.order(); ++d) r.c_[d] = a.c_[d] + b.c_[d];
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (int d = 0; d <= r.order(); ++d) r.c_[d] = a.c_[d] - b.c_[d];
        return r;
    }

    TruncatedSeries inverse() const {
        if (c_[0].is_zero()) throw std::domain_error("TruncatedSeries: inverse needs c0 != 0");
        TruncatedSeries r(order());
        r.c_[0] = OmegaRational(1) / c_[0];
        for (int d = 1; d <= order(); ++d) {
            OmegaRational s;
            for (int t = 1; t <= d; ++t) s += c_[t] * r.c_[d - t];
            r.c_[d] = -s / c_[0];
        }
        return r;
    }

    /// Substitute x -> s x for a monomial scalar s.
    TruncatedSeries scale_variable(const OmegaLaurent& s) const {
        TruncatedSeries r(order());
        OmegaRational pw(1);
        for (int d = 0; d <= order(); ++d) {
            r.c_[d] = c_[d] * pw;
            pw = pw * OmegaRational(s);
        }
        return r;
    }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }
    bool operator==(const TruncatedSeries& o) const { return (*this - o).is_zero(); }

private:
    std::vector<OmegaRational> c_;
};

/// Taylor expansion of the quantum dilogarithm to the given order, from the
/// recursion c_d = q c_{d-1} / (q^{2d} - 1) forced by the functional
/// equation Psi(q^2 x) = (1 + q x) Psi(x).
inline TruncatedSeries psi_q(int order) {
    if (order < 0) throw std::invalid_argument("psi_q: order must be >= 0");
    TruncatedSeries s = TruncatedSeries::one(order);
    for (int d = 1; d <= order; ++d) {
        const OmegaRational den(OmegaLaurent::q_power(2 * d) - OmegaLaurent(1));
        s[d] = s[d - 1] * OmegaRational(OmegaLaurent::q_power(1)) / den;
    }
    return s;
}

/// The abstract double torus of a chart used by the dilogarithm layer.
class DilogChart {
public:
    explicit DilogChart(const Triangulation& T) : T_(T) {
        eps_ = exchange_data(T).epsilon;
        m_ = T.edge_count();
        std::vector<std::vector<long long>> a(2 * m_, std::vector<long long>(2 * m_, 0));
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j) a[i][j] = -4 * eps_.at(i, j);
        for (int i = 0; i < m_; ++i) {
            a[i][m_ + i] = -4;
            a[m_ + i][i] = 4;
        }
        form_ = std::make_shared<SkewForm>(std::move(a));
    }

    const Triangulation& triangulation() const { return T_; }
    int rank() const { return m_; }
    const IntMat& eps() const { return eps_; }
    const FormPtr& form() const { return form_; }

    ExpVec xvec(int i) const { return expvec_unit(2 * m_, i); }
    ExpVec bvec(int i) const { return expvec_unit(2 * m_, m_ + i); }
    ExpVec xhatvec(int k) const {
        ExpVec v(2 * m_, 0);
        v[k] = 1;
        for (int j = 0; j < m_; ++j) v[m_ + j] = static_cast<int>(eps_.at(k, j));
        return v;
    }
    TorusElement X(int i) const { return TorusElement::monomial(form_, xvec(i)); }
    TorusElement B(int i) const { return TorusElement::monomial(form_, bvec(i)); }
    TorusElement Xhat(int k) const { return TorusElement::monomial(form_, xhatvec(k)); }
    TorusElement Bplus(int k) const {
        ExpVec v(2 * m_, 0);
        for (int j = 0; j < m_; ++j)
            if (eps_.at(k, j) > 0) v[m_ + j] = static_cast<int>(eps_.at(k, j));
        return TorusElement::monomial(form_, v);
    }
    TorusElement Bminus(int k) const {
        ExpVec v(2 * m_, 0);
        for (int j = 0; j < m_; ++j)
            if (eps_.at(k, j) < 0) v[m_ + j] = static_cast<int>(-eps_.at(k, j));
        return TorusElement::monomial(form_, v);
    }

private:
    Triangulation T_;
    int m_ = 0;
    IntMat eps_;
    FormPtr form_;
};

/// Torus element with rational coefficients: the value space for truncated
/// conjugation computations.
using RationalTorus = std::map<ExpVec, OmegaRational>;

inline void rational_add_term(RationalTorus& r, const ExpVec& v, const OmegaRational& c) {
    if (c.is_zero()) return;
    auto it = r.find(v);
    if (it == r.end()) {
        r.emplace(v, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) r.erase(it);
    }
}

inline RationalTorus rational_from_torus(const TorusElement& e) {
    RationalTorus r;
    for (const auto& [v, c] : e.terms()) r.emplace(v, OmegaRational(c));
    return r;
}

inline bool rational_equal(const RationalTorus& a, const RationalTorus& b) {
    for (const auto& [v, c] : a) {
        auto it = b.find(v);
        if (it == b.end()) {
            if (!c.is_zero()) return false;
        } else if (c != it->second) {
            return false;
        }
    }
    for (const auto& [v, c] : b)
        if (!a.contains(v) && !c.is_zero()) return false;
    return true;
}

/// A^{base} * sum_{d+e <= N} c_{de} Z1^d Z2^e with central monomial
/// directions Z1, Z2 (pairing (z1, z2) = 0).
struct GradedConjugation {
    ExpVec base;
    ExpVec z1, z2;
    int order;
    std::map<std::pair<int, int>, OmegaRational> coeff;

    /// Right multiplication by (a0 + a1 Z1); pure grade shift.
    void mul_z1_factor(const OmegaLaurent& a0, const OmegaLaurent& a1) {
        std::map<std::pair<int, int>, OmegaRational> next;
        for (const auto& [de, c] : coeff) {
            auto add = [&](std::pair<int, int> key, const OmegaRational& v) {
                if (v.is_zero()) return;
                auto it = next.find(key);
                if (it == next.end())
                    next.emplace(key, v);
                else {
                    it->second += v;
                    if (it->second.is_zero()) next.erase(it);
                }
            };
            add(de, c * OmegaRational(a0));
            if (de.first + de.second + 1 <= order)
                add({de.first + 1, de.second}, c * OmegaRational(a1));
        }
        coeff = std::move(next);
    }
    void mul_z2_factor(const OmegaLaurent& a0, const OmegaLaurent& a1) {
        std::map<std::pair<int, int>, OmegaRational> next;
        for (const auto& [de, c] : coeff) {
            auto add = [&](std::pair<int, int> key, const OmegaRational& v) {
                if (v.is_zero()) return;
                auto it = next.find(key);
                if (it == next.end())
                    next.emplace(key, v);
                else {
                    it->second += v;
                    if (it->second.is_zero()) next.erase(it);
                }
            };
            add(de, c * OmegaRational(a0));
            if (de.first + de.second + 1 <= order)
                add({de.first, de.second + 1}, c * OmegaRational(a1));
        }
        coeff = std::move(next);
    }

    /// Expand into the torus with rational coefficients (degrees <= order).
    RationalTorus expand(const SkewForm& form) const {
        RationalTorus r;
        for (const auto& [de, c] : coeff) {
            const auto [d, e] = de;
            ExpVec v = base;
            long long ph = 0;
            // A^{base} Z1^d = w^{-L(base, d z1)} A^{base + d z1}, then Z2^e.
            ph -= form.eval(base, expvec_scale(z1, d));
            ExpVec v1 = expvec_add(base, expvec_scale(z1, d));
            ph -= form.eval(v1, expvec_scale(z2, e));
            v = expvec_add(v1, expvec_scale(z2, e));
            rational_add_term(r, v, c * OmegaRational(OmegaLaurent::monomial(static_cast<int>(ph))));
        }
        return r;
    }

    /// The largest total degree carrying a nonzero coefficient (-1 if none).
    int top_degree() const {
        int top = -1;
        for (const auto& [de, c] : coeff)
            if (!c.is_zero()) top = std::max(top, de.first + de.second);
        return top;
    }
};

struct ConjugationReport {
    TorusElement value;   // cleared Laurent value (when closed)
    bool closed = false;  // tail vanished and coefficients cleared
    int tail_degree = -1; // top nonzero degree of the series factor
};

/// phi(Z) target phi(Z)^{-1} for a central monomial Z = A^z and a monomial
/// target c A^v: equals A^v . [phi(sZ) phi(Z)^{-1}](Z), s = w^{-2 L(z,v)}.
inline ConjugationReport conjugate(const TruncatedSeries& phi, const TorusElement& zmon,
                                   const TorusElement& target) {
    if (!zmon.is_monomial() || !target.is_monomial())
        throw std::invalid_argument("conjugate: non-monomial targets rejected");
    const FormPtr& form = target.form();
    const ExpVec z = zmon.terms().begin()->first;
    const auto& [v, cv] = *target.terms().begin();
    const OmegaLaurent s = OmegaLaurent::monomial(static_cast<int>(-2 * form->eval(z, v)));
    const TruncatedSeries ratio = phi.scale_variable(s) * phi.inverse();

    ConjugationReport rep;
    GradedConjugation g{v, z, ExpVec(v.size(), 0), phi.order(), {}};
    for (int d = 0; d <= phi.order(); ++d)
        if (!ratio[d].is_zero()) g.coeff.emplace(std::make_pair(d, 0), ratio[d]);
    rep.tail_degree = g.top_degree();

    TorusElement out = TorusElement::zero(form);
    bool ok = true;
    for (const auto& [w, c] : g.expand(*form)) {
        auto lau = c.to_laurent();
        if (!lau) {
            ok = false;
            break;
        }
        out.add_term(w, cv * *lau);
    }
    rep.closed = ok;
    if (ok) rep.value = out;
    return rep;
}

/// The images of the flipped generators under the lattice map: pure
/// monomials in the unflipped chart.
inline TorusElement mu_prime(const DilogChart& D, int k, bool x_generator, int i) {
    const int m = D.rank();
    if (x_generator) {
        if (i == k) return TorusElement::monomial(D.form(), expvec_neg(D.xvec(k)));
        const long long e = D.eps().at(i, k);
        ExpVec v = D.xvec(i);
        if (e > 0) v[k] += static_cast<int>(e);
        return TorusElement::monomial(D.form(), v);
    }
    if (i != k) return D.B(i);
    ExpVec v(2 * m, 0);
    v[m + k] = -1;
    for (int j = 0; j < m; ++j)
        if (D.eps().at(k, j) < 0) v[m + j] += static_cast<int>(-D.eps().at(k, j));
    return TorusElement::monomial(D.form(), v);
}

namespace dilog_detail {

/// mu_sharp of a monomial: Ad_{Psi(X_k)/Psi(Xhat_k)} to the given order.
inline GradedConjugation mu_sharp(const DilogChart& D, int k, const ExpVec& v, int order) {
    const TruncatedSeries psi = psi_q(order);
    const SkewForm& f = *D.form();
    const ExpVec z1 = D.xvec(k);
    const ExpVec z2 = D.xhatvec(k);
    const OmegaLaurent s1 = OmegaLaurent::monomial(static_cast<int>(-2 * f.eval(z1, v)));
    const OmegaLaurent s2 = OmegaLaurent::monomial(static_cast<int>(-2 * f.eval(z2, v)));
    // Psi(X_k) [Psi(Xhat_k)^{-1} A^v Psi(Xhat_k)] Psi(X_k)^{-1}
    //   = A^v . [Psi(s1 x) Psi(x)^{-1}](X_k) . [Psi(s2 x)^{-1} Psi(x)](Xhat_k).
    const TruncatedSeries theta = psi.scale_variable(s1) * psi.inverse();
    const TruncatedSeries eta = psi.scale_variable(s2).inverse() * psi;
    GradedConjugation g{v, z1, z2, order, {}};
    for (int d = 0; d <= order; ++d) {
        if (theta[d].is_zero()) continue;
        for (int e = 0; d + e <= order; ++e) {
            if (eta[e].is_zero()) continue;
            g.coeff.emplace(std::make_pair(d, e), theta[d] * eta[e]);
        }
    }
    return g;
}

}  // namespace dilog_detail

struct DilogReport {
    bool pass = true;
    int cases = 0;
    std::string detail;

    void record(bool ok, const std::string& what) {
        ++cases;
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

/// Both functional equations of Psi^q, checked coefficientwise to the given
/// order.
inline DilogReport verify_psi_functional_equations(int order) {
    DilogReport rep;
    const TruncatedSeries psi = psi_q(order);
    // Psi(q^2 x) = (1 + q x) Psi(x).
    TruncatedSeries lin = TruncatedSeries::one(order);
    if (order >= 1) lin[1] = OmegaRational(OmegaLaurent::q_power(1));
    rep.record(psi.scale_variable(OmegaLaurent::q_power(2)) == lin * psi,
               "Psi(q^2 x) = (1+qx) Psi(x)");
    // Psi(q^-2 x) = (1 + q^-1 x)^{-1} Psi(x).
    TruncatedSeries lin2 = TruncatedSeries::one(order);
    if (order >= 1) lin2[1] = OmegaRational(OmegaLaurent::q_power(-1));
    rep.record(psi.scale_variable(OmegaLaurent::q_power(-2)) == lin2.inverse() * psi,
               "Psi(q^-2 x) = (1+q^-1 x)^{-1} Psi(x)");
    // Order-0 coefficient is 1.
    rep.record(psi[0] == OmegaRational(1), "Psi^q constant term");
    return rep;
}

/// The conjugation closed forms (mu_sharp on generators), with zero tails.
inline DilogReport verify_conjugation_closed_forms(const DilogChart& D, int k, int order) {
    DilogReport rep;
    const int m = D.rank();
    const SkewForm& f = *D.form();

    for (int i = 0; i < m; ++i) {
        // mu_sharp(X_i).
        GradedConjugation g = dilog_detail::mu_sharp(D, k, D.xvec(i), order);
        const long long e = D.eps().at(i, k);
        if (e <= 0) {
            // X_i prod_{p=0}^{|e|-1} (1 + q^{2p+1} X_k): polynomial, exact.
            TorusElement rhs = D.X(i);
            for (long long p = 0; p < -e; ++p)
                rhs = rhs * (TorusElement::unit(D.form()) +
                             OmegaLaurent::q_power(static_cast<int>(2 * p + 1)) * D.X(k));
            rep.record(rational_equal(g.expand(f), rational_from_torus(rhs)),
                       "mu_sharp(X_i), eps <= 0");
        } else {
            // X_i ((1+q^{-1}X_k)...(1+q^{1-2e}X_k))^{-1}: clear denominators.
            GradedConjugation lhs = g;
            for (long long p = 0; p < e; ++p)
                lhs.mul_z1_factor(OmegaLaurent(1), OmegaLaurent::q_power(static_cast<int>(-2 * p - 1)));
            rep.record(rational_equal(lhs.expand(f), rational_from_torus(D.X(i))),
                       "mu_sharp(X_i), eps > 0");
        }
    }
    // mu_sharp(B_i) = B_i for i != k; B_k (1 + q X_k)(1 + q Xhat_k)^{-1}.
    for (int i = 0; i < m; ++i) {
        GradedConjugation g = dilog_detail::mu_sharp(D, k, D.bvec(i), order);
        if (i != k) {
            rep.record(rational_equal(g.expand(f), rational_from_torus(D.B(i))),
                       "mu_sharp(B_i), i != k");
        } else {
            GradedConjugation lhs = g;
            lhs.mul_z2_factor(OmegaLaurent(1), OmegaLaurent::q_power(1));
            const TorusElement rhs =
                D.B(k) * (TorusElement::unit(D.form()) + OmegaLaurent::q_power(1) * D.X(k));
            rep.record(rational_equal(lhs.expand(f), rational_from_torus(rhs)),
                       "mu_sharp(B_k)");
        }
    }
    return rep;
}

/// The composite mu_k^q = mu_sharp o mu_prime on every generator against the
/// closed transformation formulas, plus the statement that X generators stay
/// inside the X subalgebra.
inline DilogReport verify_thm_transformation(const DilogChart& D, int k, int order) {
    DilogReport rep;
    const int m = D.rank();
    const SkewForm& f = *D.form();

    auto composite = [&](bool x_generator, int i) {
        const TorusElement mp = mu_prime(D, k, x_generator, i);
        return dilog_detail::mu_sharp(D, k, mp.terms().begin()->first, order);
    };

    for (int i = 0; i < m; ++i) {
        GradedConjugation g = composite(true, i);
        const long long e = D.eps().at(i, k);
        if (i == k) {
            rep.record(rational_equal(g.expand(f),
                                      rational_from_torus(D.X(k).inverse_monomial())),
                       "mu_q(X'_k) = X_k^{-1}");
        } else if (e <= 0) {
            TorusElement rhs = D.X(i);
            for (long long p = 0; p < -e; ++p)
                rhs = rhs * (TorusElement::unit(D.form()) +
                             OmegaLaurent::q_power(static_cast<int>(2 * p + 1)) * D.X(k));
            rep.record(rational_equal(g.expand(f), rational_from_torus(rhs)),
                       "mu_q(X'_i), eps <= 0");
        } else {
            // mu_q(X'_i) prod_p (X_k + q^{2p+1}) = X_i X_k^e.
            GradedConjugation lhs = g;
            for (long long p = 0; p < e; ++p)
                lhs.mul_z1_factor(OmegaLaurent::q_power(static_cast<int>(2 * p + 1)),
                                  OmegaLaurent(1));
            const TorusElement rhs = D.X(i) * D.X(k).pow(static_cast<int>(e));
            rep.record(rational_equal(lhs.expand(f), rational_from_torus(rhs)),
                       "mu_q(X'_i), eps > 0");
        }
        // Restriction statement: X-generator images involve no B variables.
        bool xonly = true;
        for (const auto& [w, c] : g.expand(f)) {
            for (int t = m; t < 2 * m; ++t)
                if (w[t] != 0) xonly = false;
        }
        rep.record(xonly, "mu_q(X'_i) stays in the X subalgebra");
    }

    for (int i = 0; i < m; ++i) {
        GradedConjugation g = composite(false, i);
        if (i != k) {
            rep.record(rational_equal(g.expand(f), rational_from_torus(D.B(i))),
                       "mu_q(B'_i) = B_i");
        } else {
            // mu_q(B'_k)(1 + q^{-1} X_k) = (q X_k B+ + B-) B_k^{-1}.
            GradedConjugation lhs = g;
            lhs.mul_z1_factor(OmegaLaurent(1), OmegaLaurent::q_power(-1));
            const TorusElement rhs =
                (OmegaLaurent::q_power(1) * (D.X(k) * D.Bplus(k)) + D.Bminus(k)) *
                D.B(k).inverse_monomial();
            rep.record(rational_equal(lhs.expand(f), rational_from_torus(rhs)),
                       "mu_q(B'_k)");
        }
    }
    return rep;
}

}  // namespace qdisk
