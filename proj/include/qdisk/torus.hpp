/**
 * @file torus.hpp
 * @brief Based quantum torus over an integer skew form: sparse exponent
 *        vectors with OmegaLaurent coefficients and the twisted product
 *        A^v A^w = w^{-L(v,w)} A^{v+w}.
 */
#pragma once

#include "qdisk/omega.hpp"

#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdisk {

using ExpVec = std::vector<int>;

inline ExpVec expvec_add(const ExpVec& a, const ExpVec& b) {
    ExpVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}
inline ExpVec expvec_sub(const ExpVec& a, const ExpVec& b) {
    ExpVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}
inline ExpVec expvec_neg(const ExpVec& a) {
    ExpVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}
inline ExpVec expvec_scale(const ExpVec& a, int s) {
    ExpVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}
inline bool expvec_is_zero(const ExpVec& a) {
    for (int x : a)
        if (x != 0) return false;
    return true;
}
inline ExpVec expvec_unit(size_t m, size_t i) {
    ExpVec r(m, 0);
    r[i] = 1;
    return r;
}

/// Skew-symmetric integer bilinear form on Z^m.
class SkewForm {
public:
    explicit SkewForm(std::vector<std::vector<long long>> mat) : a_(std::move(mat)) {
        m_ = static_cast<int>(a_.size());
        for (int i = 0; i < m_; ++i) {
            if (static_cast<int>(a_[i].size()) != m_)
                throw std::invalid_argument("SkewForm: not square");
            for (int j = 0; j < m_; ++j)
                if (a_[i][j] != -a_[j][i]) throw std::invalid_argument("SkewForm: not skew");
        }
    }

    int rank() const { return m_; }
    long long at(int i, int j) const { return a_[i][j]; }

    long long eval(const ExpVec& u, const ExpVec& v) const {
        long long s = 0;
        for (int i = 0; i < m_; ++i) {
            if (u[i] == 0) continue;
            long long row = 0;
            for (int j = 0; j < m_; ++j) row += a_[i][j] * v[j];
            s += u[i] * row;
        }
        return s;
    }

    bool operator==(const SkewForm& o) const { return a_ == o.a_; }

private:
    int m_;
    std::vector<std::vector<long long>> a_;
};

using FormPtr = std::shared_ptr<const SkewForm>;

inline bool same_form(const FormPtr& x, const FormPtr& y) {
    return x == y || (x && y && *x == *y);
}

class TorusElement {
public:
    TorusElement() = default;
    explicit TorusElement(FormPtr form) : form_(std::move(form)) {}

    static TorusElement monomial(FormPtr form, ExpVec v, OmegaLaurent coeff = OmegaLaurent(1)) {
        TorusElement r(std::move(form));
        if (static_cast<int>(v.size()) != r.form_->rank())
            throw std::invalid_argument("TorusElement: exponent rank mismatch");
        if (!coeff.is_zero()) r.terms_.emplace(std::move(v), std::move(coeff));
        return r;
    }
    static TorusElement unit(FormPtr form) {
        ExpVec z(form->rank(), 0);
        return monomial(std::move(form), std::move(z));
    }
    static TorusElement zero(FormPtr form) { return TorusElement(std::move(form)); }

    const FormPtr& form() const { return form_; }
    const std::map<ExpVec, OmegaLaurent>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    bool is_one() const {
        return terms_.size() == 1 && expvec_is_zero(terms_.begin()->first) &&
               terms_.begin()->second.is_one();
    }

    void add_term(const ExpVec& v, const OmegaLaurent& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(v);
        if (it == terms_.end()) {
            terms_.emplace(v, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TorusElement& operator+=(const TorusElement& o) {
        require_same_form(o);
        for (const auto& [v, c] : o.terms_) add_term(v, c);
        return *this;
    }
    TorusElement& operator-=(const TorusElement& o) {
        require_same_form(o);
        for (const auto& [v, c] : o.terms_) add_term(v, -c);
        return *this;
    }
    friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
    friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
    TorusElement operator-() const {
        TorusElement r(form_);
        for (const auto& [v, c] : terms_) r.terms_.emplace(v, -c);
        return r;
    }

    /// Twisted product.
    friend TorusElement operator*(const TorusElement& a, const TorusElement& b) {
        a.require_same_form(b);
        TorusElement r(a.form_ ? a.form_ : b.form_);
        for (const auto& [va, ca] : a.terms_)
            for (const auto& [vb, cb] : b.terms_) {
                const long long tw = -a.form_->eval(va, vb);
                r.add_term(expvec_add(va, vb), ca * cb * OmegaLaurent::monomial(static_cast<int>(tw)));
            }
        return r;
    }
    TorusElement& operator*=(const TorusElement& o) { return *this = *this * o; }

    friend TorusElement operator*(const OmegaLaurent& s, const TorusElement& x) {
        TorusElement r(x.form_);
        for (const auto& [v, c] : x.terms_) r.add_term(v, s * c);
        return r;
    }

    bool operator==(const TorusElement& o) const {
        return same_form(form_, o.form_) && terms_ == o.terms_;
    }
    bool operator!=(const TorusElement& o) const { return !(*this == o); }

    /// The star antiautomorphism: fixes each A^v, conjugates coefficients.
    TorusElement star() const {
        TorusElement r(form_);
        for (const auto& [v, c] : terms_) r.terms_.emplace(v, c.bar());
        return r;
    }

    /// Largest exponent vector under the lexicographic order, with coefficient.
    std::pair<ExpVec, OmegaLaurent> leading_term() const {
        if (is_zero()) throw std::domain_error("leading_term of zero");
        auto it = terms_.rbegin();
        return {it->first, it->second};
    }

    bool is_monomial() const { return terms_.size() == 1; }

    TorusElement inverse_monomial() const {
        if (!is_monomial()) throw std::domain_error("inverse_monomial: not a monomial");
        const auto& [v, c] = *terms_.begin();
        // (c A^v)^-1 = c^-1 A^-v; coefficient must be an invertible +-w^j.
        if (c.terms().size() != 1) throw std::domain_error("inverse_monomial: non-unit coefficient");
        const auto& [e, cc] = *c.terms().begin();
        if (cc != 1 && cc != -1) throw std::domain_error("inverse_monomial: non-unit coefficient");
        return monomial(form_, expvec_neg(v), OmegaLaurent::monomial(-e, cc));
    }

    /// Integer power; negative powers only for invertible monomials.
    TorusElement pow(int k) const {
        if (k == 0) return unit(form_);
        TorusElement base = *this;
        if (k < 0) {
            base = inverse_monomial();
            k = -k;
        }
        TorusElement r = unit(form_);
        for (int i = 0; i < k; ++i) r *= base;
        return r;
    }

    /// Coefficients conjugated (w -> w^-1), exponents kept; the image of an
    /// element under reversing the ambient form's sign.
    TorusElement conjugate_coefficients() const { return star(); }

    /// Classical limit: the commutative Laurent polynomial at w = 1.
    std::map<ExpVec, Int> eval_omega_one() const {
        std::map<ExpVec, Int> r;
        for (const auto& [v, c] : terms_) {
            Int x = c.eval_one();
            if (x != 0) r[v] = x;
        }
        return r;
    }

    bool coefficients_in_q() const {
        for (const auto& [v, c] : terms_)
            if (!c.is_q_laurent()) return false;
        return true;
    }
    bool coefficients_nonneg_q() const {
        for (const auto& [v, c] : terms_)
            if (!c.is_nonneg_q_laurent()) return false;
        return true;
    }

    /// Canonical text form: terms sorted by exponent vector, exponents keyed
    /// by the supplied labels.  Single-term coefficients print bare (with the
    /// sign pulled into the join); multi-term coefficients are parenthesized.
    std::string to_string(const std::vector<std::string>& labels, bool q_mode = false) const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [v, c] : terms_) {
            const bool single = c.terms().size() == 1;
            const bool neg = single && c.terms().begin()->second < 0;
            const OmegaLaurent abs_c = neg ? -c : c;
            if (first) {
                if (neg) os << "-";
                first = false;
            } else {
                os << (neg ? " - " : " + ");
            }
            std::string mon;
            for (size_t i = 0; i < v.size(); ++i) {
                if (v[i] == 0) continue;
                if (!mon.empty()) mon += " ";
                mon += labels[i];
                if (v[i] != 1) mon += "^" + std::to_string(v[i]);
            }
            if (mon.empty()) {
                if (single)
                    os << abs_c.to_string(q_mode);
                else
                    os << "(" << abs_c.to_string(q_mode) << ")";
            } else if (single && abs_c.is_one()) {
                os << mon;
            } else if (single) {
                os << abs_c.to_string(q_mode) << " " << mon;
            } else {
                os << "(" << abs_c.to_string(q_mode) << ") " << mon;
            }
        }
        return os.str();
    }

private:
    void require_same_form(const TorusElement& o) const {
        if (!same_form(form_, o.form_)) throw std::invalid_argument("torus: form mismatch");
    }

    FormPtr form_;
    std::map<ExpVec, OmegaLaurent> terms_;
};

/// Solves D * Z = P exactly in the torus; throws when the division does not
/// clear (the callers rely on the quantum Laurent phenomenon).
inline TorusElement torus_div_left(const TorusElement& D, const TorusElement& P) {
    if (D.is_zero()) throw std::domain_error("torus_div_left: zero divisor");
    if (P.is_zero()) return TorusElement::zero(P.form());
    TorusElement Z = TorusElement::zero(P.form());
    TorusElement R = P;
    const auto [vd, cd] = D.leading_term();
    // For an exact quotient Z, every emitted exponent lies lex-between
    // min(P)-min(D) and lead(P)-lead(D).
    const ExpVec vz_min = expvec_sub(P.terms().begin()->first, D.terms().begin()->first);
    long guard = 1000000;
    while (!R.is_zero()) {
        if (--guard < 0) throw std::domain_error("torus_div_left: division does not terminate");
        const auto [vr, cr] = R.leading_term();
        const ExpVec vz = expvec_sub(vr, vd);
        if (vz < vz_min) throw std::domain_error("torus_div_left: division does not clear");
        const long long tw = D.form()->eval(vd, vz);
        auto c = (OmegaLaurent::monomial(static_cast<int>(tw)) * cr).divided_exact(cd);
        if (!c) throw std::domain_error("torus_div_left: coefficient division failed");
        TorusElement t = TorusElement::monomial(P.form(), vz, *c);
        Z += t;
        R -= D * t;
    }
    return Z;
}

/// Solves Z * D = P exactly.
inline TorusElement torus_div_right(const TorusElement& P, const TorusElement& D) {
    if (D.is_zero()) throw std::domain_error("torus_div_right: zero divisor");
    if (P.is_zero()) return TorusElement::zero(P.form());
    TorusElement Z = TorusElement::zero(P.form());
    TorusElement R = P;
    const auto [vd, cd] = D.leading_term();
    const ExpVec vz_min = expvec_sub(P.terms().begin()->first, D.terms().begin()->first);
    long guard = 1000000;
    while (!R.is_zero()) {
        if (--guard < 0) throw std::domain_error("torus_div_right: division does not terminate");
        const auto [vr, cr] = R.leading_term();
        const ExpVec vz = expvec_sub(vr, vd);
        if (vz < vz_min) throw std::domain_error("torus_div_right: division does not clear");
        const long long tw = D.form()->eval(vz, vd);
        auto c = (OmegaLaurent::monomial(static_cast<int>(tw)) * cr).divided_exact(cd);
        if (!c) throw std::domain_error("torus_div_right: coefficient division failed");
        TorusElement t = TorusElement::monomial(P.form(), vz, *c);
        Z += t;
        R -= t * D;
    }
    return Z;
}

}  // namespace qdisk
