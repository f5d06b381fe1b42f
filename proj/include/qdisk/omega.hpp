/**
 * @file omega.hpp
 * @brief Exact arithmetic in Z[w,w^-1] (w = quarter parameter, q = w^4) and
 *        its rational extension.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qdisk {

using Int = boost::multiprecision::cpp_int;

/// Laurent polynomial in w with arbitrary-precision integer coefficients.
/// Invariant: no stored zero coefficients.
class OmegaLaurent {
public:
    OmegaLaurent() = default;
    OmegaLaurent(long c) {
        if (c != 0) terms_[0] = c;
    }
    OmegaLaurent(const Int& c) {
        if (c != 0) terms_[0] = c;
    }

    static OmegaLaurent monomial(int exp, Int coeff = 1) {
        OmegaLaurent r;
        if (coeff != 0) r.terms_[exp] = std::move(coeff);
        return r;
    }
    static OmegaLaurent omega_power(int e) { return monomial(e); }
    static OmegaLaurent q_power(int k) { return monomial(4 * k); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
    }
    const std::map<int, Int>& terms() const { return terms_; }

    int min_exp() const {
        if (is_zero()) throw std::domain_error("min_exp of zero");
        return terms_.begin()->first;
    }
    int max_exp() const {
        if (is_zero()) throw std::domain_error("max_exp of zero");
        return terms_.rbegin()->first;
    }

    OmegaLaurent& operator+=(const OmegaLaurent& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    OmegaLaurent& operator-=(const OmegaLaurent& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend OmegaLaurent operator+(OmegaLaurent a, const OmegaLaurent& b) { return a += b; }
    friend OmegaLaurent operator-(OmegaLaurent a, const OmegaLaurent& b) { return a -= b; }
    OmegaLaurent operator-() const {
        OmegaLaurent r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    friend OmegaLaurent operator*(const OmegaLaurent& a, const OmegaLaurent& b) {
        OmegaLaurent r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    OmegaLaurent& operator*=(const OmegaLaurent& o) { return *this = *this * o; }

    bool operator==(const OmegaLaurent& o) const { return terms_ == o.terms_; }
    bool operator!=(const OmegaLaurent& o) const { return !(*this == o); }
    /// Total order (for use as a map key); lexicographic on the term map.
    bool operator<(const OmegaLaurent& o) const { return terms_ < o.terms_; }

    /// The bar involution: w -> w^-1.
    OmegaLaurent bar() const {
        OmegaLaurent r;
        for (const auto& [e, c] : terms_) r.terms_[-e] = c;
        return r;
    }

    /// Substitute w -> w^s (used for t = w^-4 specializations).
    OmegaLaurent scale_exponents(int s) const {
        if (s == 0) throw std::invalid_argument("scale_exponents: s must be nonzero");
        OmegaLaurent r;
        for (const auto& [e, c] : terms_) r.terms_[e * s] = c;
        return r;
    }

    /// True iff the value lies in Z[q,q^-1], q = w^4.
    bool is_q_laurent() const {
        for (const auto& [e, c] : terms_)
            if (e % 4 != 0) return false;
        return true;
    }

    /// True iff the value lies in Z_{>=0}[q,q^-1] (Laurent in q, positive coefficients).
    bool is_nonneg_q_laurent() const {
        for (const auto& [e, c] : terms_)
            if (e % 4 != 0 || c <= 0) return false;
        return true;
    }

    /// Ring map to Z given by w = 1 (classical limit).
    Int eval_one() const {
        Int s = 0;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    /// gcd of all coefficients (0 for the zero element).
    Int content() const {
        Int g = 0;
        for (const auto& [e, c] : terms_) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(c));
        return g;
    }

    /// Polynomial gcd (primitive pseudo-remainder sequence), normalized to a
    /// primitive polynomial with positive leading coefficient and minimum
    /// exponent zero.  gcd(x, 0) = primitive(x).
    static OmegaLaurent poly_gcd(const OmegaLaurent& x, const OmegaLaurent& y) {
        auto primitive = [](const OmegaLaurent& p) {
            if (p.is_zero()) return p;
            OmegaLaurent r = p * monomial(-p.min_exp());
            const Int c = r.content();
            r = *r.divided_exact(OmegaLaurent(c));
            if (r.terms_.rbegin()->second < 0) r = -r;
            return r;
        };
        OmegaLaurent a = primitive(x), b = primitive(y);
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        while (!b.is_zero()) {
            if (a.max_exp() < b.max_exp()) std::swap(a, b);
            // Pseudo-remainder of a by b.
            OmegaLaurent r = a;
            const Int lb = b.terms_.rbegin()->second;
            const int db = b.max_exp();
            while (!r.is_zero() && r.max_exp() >= db) {
                const Int lr = r.terms_.rbegin()->second;
                const int dr = r.max_exp();
                r = OmegaLaurent(lb) * r - monomial(dr - db, lr) * b;
            }
            a = b;
            b = primitive(r);
        }
        return primitive(a);
    }

    /// Exact division; nullopt when the divisor does not divide *this.
    std::optional<OmegaLaurent> divided_exact(const OmegaLaurent& d) const {
        if (d.is_zero()) return std::nullopt;
        if (is_zero()) return OmegaLaurent();
        // Divide top-down; an inexact division either hits a coefficient
        // non-divisibility or underruns the possible quotient degree.
        OmegaLaurent rem = *this;
        const int quot_min = min_exp() - d.min_exp();
        OmegaLaurent quot;
        long guard = static_cast<long>(max_exp() - min_exp()) + (d.max_exp() - d.min_exp()) + 16;
        while (!rem.is_zero()) {
            if (--guard < 0) return std::nullopt;
            const int er = rem.max_exp();
            const int ed = d.max_exp();
            const Int& cr = rem.terms_.rbegin()->second;
            const Int& cd = d.terms_.rbegin()->second;
            if (cr % cd != 0) return std::nullopt;
            const int eq = er - ed;
            if (eq < quot_min) return std::nullopt;
            OmegaLaurent t = monomial(eq, cr / cd);
            quot += t;
            rem -= t * d;
            if (!rem.is_zero() && rem.max_exp() >= er) return std::nullopt;
        }
        return quot;
    }

    /// Printed form: `c*w^e` terms, exponents ascending.  With q_mode set,
    /// exponents divisible by 4 print as powers of q (requires is_q_laurent).
    std::string to_string(bool q_mode = false) const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Int a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
                first = false;
            } else {
                if (a < 0) {
                    os << " - ";
                    a = -a;
                } else {
                    os << " + ";
                }
            }
            os << term_string(e, a, q_mode);
        }
        return os.str();
    }

private:
    static std::string term_string(int e, const Int& abs_coeff, bool q_mode) {
        std::ostringstream os;
        const char* sym = "w";
        int ee = e;
        if (q_mode) {
            if (e % 4 != 0) throw std::domain_error("q-mode printing of non-q element");
            sym = "q";
            ee = e / 4;
        }
        if (ee == 0) {
            os << abs_coeff;
        } else {
            if (abs_coeff != 1) os << abs_coeff << "*";
            os << sym;
            if (ee != 1) os << "^" << ee;
        }
        return os.str();
    }

    void add_term(int e, const Int& c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<int, Int> terms_;
};

inline OmegaLaurent operator*(const Int& s, const OmegaLaurent& x) { return OmegaLaurent(s) * x; }

/// Fraction of two OmegaLaurent values.  Simplification reduces by content
/// gcd and by monomial factors only; equality is by cross-multiplication.
class OmegaRational {
public:
    OmegaRational() : num_(), den_(1) {}
    OmegaRational(long c) : num_(c), den_(1) {}
    OmegaRational(OmegaLaurent n) : num_(std::move(n)), den_(1) {}
    OmegaRational(OmegaLaurent n, OmegaLaurent d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw std::invalid_argument("OmegaRational: zero denominator");
        reduce();
    }

    const OmegaLaurent& num() const { return num_; }
    const OmegaLaurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend OmegaRational operator+(const OmegaRational& a, const OmegaRational& b) {
        return OmegaRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend OmegaRational operator-(const OmegaRational& a, const OmegaRational& b) {
        return OmegaRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend OmegaRational operator*(const OmegaRational& a, const OmegaRational& b) {
        return OmegaRational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend OmegaRational operator/(const OmegaRational& a, const OmegaRational& b) {
        if (b.is_zero()) throw std::domain_error("OmegaRational: division by zero");
        return OmegaRational(a.num_ * b.den_, a.den_ * b.num_);
    }
    OmegaRational operator-() const { return OmegaRational(-num_, den_); }
    OmegaRational& operator+=(const OmegaRational& o) { return *this = *this + o; }
    OmegaRational& operator-=(const OmegaRational& o) { return *this = *this - o; }
    OmegaRational& operator*=(const OmegaRational& o) { return *this = *this * o; }
    OmegaRational& operator/=(const OmegaRational& o) { return *this = *this / o; }

    OmegaRational inverse() const {
        if (is_zero()) throw std::domain_error("OmegaRational: inverse of zero");
        return OmegaRational(den_, num_);
    }

    bool operator==(const OmegaRational& o) const { return num_ * o.den_ == o.num_ * den_; }
    bool operator!=(const OmegaRational& o) const { return !(*this == o); }

    OmegaRational bar() const { return OmegaRational(num_.bar(), den_.bar()); }

    /// Clears the fraction when the denominator divides the numerator.
    std::optional<OmegaLaurent> to_laurent() const {
        if (num_.is_zero()) return OmegaLaurent();
        return num_.divided_exact(den_);
    }

    std::string to_string(bool q_mode = false) const {
        if (den_.is_one()) return num_.to_string(q_mode);
        return "(" + num_.to_string(q_mode) + ") / (" + den_.to_string(q_mode) + ")";
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = OmegaLaurent(1);
            return;
        }
        // Monomial factors.
        int sh_n = num_.min_exp(), sh_d = den_.min_exp();
        int sh = std::min(sh_n, sh_d);
        if (sh != 0) {
            num_ = num_ * OmegaLaurent::monomial(-sh);
            den_ = den_ * OmegaLaurent::monomial(-sh);
        }
        // Content gcd.
        Int g = boost::multiprecision::gcd(num_.content(), den_.content());
        if (g > 1) {
            num_ = *num_.divided_exact(OmegaLaurent(g));
            den_ = *den_.divided_exact(OmegaLaurent(g));
        }
        // Polynomial gcd (keeps the series arithmetic in the dilog layer
        // from accumulating denominators).
        OmegaLaurent pg = OmegaLaurent::poly_gcd(num_, den_);
        if (!pg.is_one() && !pg.is_zero()) {
            auto qn = num_.divided_exact(pg);
            auto qd = den_.divided_exact(pg);
            if (qn && qd) {
                num_ = *qn;
                den_ = *qd;
            }
        }
        // Sign-normalize: lowest-degree denominator coefficient positive.
        if (den_.terms().begin()->second < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    OmegaLaurent num_, den_;
};

/// t-binomial coefficient binom(r,p)_t as a Laurent polynomial in t
/// (returned with denominator 1; the quotient always clears).
inline OmegaRational t_binomial(long r, long p) {
    if (p < 0) throw std::invalid_argument("t_binomial: p must be >= 0");
    OmegaLaurent num(1), den(1);
    for (long s = 0; s < p; ++s) {
        const int a = static_cast<int>(r - s);
        const int b = static_cast<int>(p - s);
        num *= OmegaLaurent::monomial(a) - OmegaLaurent::monomial(-a);
        den *= OmegaLaurent::monomial(b) - OmegaLaurent::monomial(-b);
    }
    auto q = num.divided_exact(den);
    if (!q) throw std::logic_error("t_binomial: quotient failed to clear");
    return OmegaRational(*q);
}

}  // namespace qdisk
