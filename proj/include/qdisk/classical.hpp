/**
 * @file classical.hpp
 * @brief Commutative (q = 1) cluster expansion oracle.  Deliberately
 *        independent of the quantum torus machinery: plain multivariate
 *        Laurent polynomials over Z and the classical exchange relation,
 *        with exchange matrices recomputed per triangulation.
 */
#pragma once

#include "qdisk/cluster.hpp"  // x_coordinates
#include "qdisk/polygon.hpp"
#include "qdisk/torus.hpp"  // ExpVec helpers and Int

#include <map>
#include <stdexcept>
#include <vector>

namespace qdisk {

/// Commutative Laurent polynomial: exponent vector -> integer coefficient.
using ClassicalPoly = std::map<ExpVec, Int>;

inline ClassicalPoly classical_monomial(const ExpVec& v, Int c = 1) {
    ClassicalPoly p;
    if (c != 0) p[v] = std::move(c);
    return p;
}

inline void classical_add_term(ClassicalPoly& p, const ExpVec& v, const Int& c) {
    if (c == 0) return;
    auto it = p.find(v);
    if (it == p.end()) {
        p[v] = c;
    } else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

inline ClassicalPoly classical_add(const ClassicalPoly& a, const ClassicalPoly& b) {
    ClassicalPoly r = a;
    for (const auto& [v, c] : b) classical_add_term(r, v, c);
    return r;
}

inline ClassicalPoly classical_mul(const ClassicalPoly& a, const ClassicalPoly& b) {
    ClassicalPoly r;
    for (const auto& [va, ca] : a)
        for (const auto& [vb, cb] : b) classical_add_term(r, expvec_add(va, vb), ca * cb);
    return r;
}

/// Exact division; throws when it does not clear.
inline ClassicalPoly classical_div(const ClassicalPoly& num, const ClassicalPoly& den) {
    if (den.empty()) throw std::domain_error("classical_div: zero divisor");
    ClassicalPoly quot;
    ClassicalPoly rem = num;
    const auto& [vd, cd] = *den.rbegin();
    long guard = 1000000;
    while (!rem.empty()) {
        if (--guard < 0) throw std::domain_error("classical_div: does not terminate");
        const auto& [vr, cr] = *rem.rbegin();
        if (cr % cd != 0) throw std::domain_error("classical_div: does not clear");
        const ExpVec vz = expvec_sub(vr, vd);
        const Int cq = cr / cd;
        classical_add_term(quot, vz, cq);
        for (const auto& [v, c] : den) classical_add_term(rem, expvec_add(vz, v), -cq * c);
    }
    return quot;
}

inline ClassicalPoly classical_pow(const ClassicalPoly& a, int k) {
    ClassicalPoly r = classical_monomial(ExpVec(a.empty() ? 0 : a.begin()->first.size(), 0));
    if (k == 0) return r;
    if (k < 0) throw std::domain_error("classical_pow: negative power");
    for (int i = 0; i < k; ++i) r = classical_mul(r, a);
    return r;
}

/// Classical cluster expansions in a fixed chart.  Variables are indexed by
/// the chart's edges in lexicographic order.
class ClassicalCluster {
public:
    explicit ClassicalCluster(const Triangulation& T0) : T0_(T0), m_(T0.edge_count()) {}

    const Triangulation& chart() const { return T0_; }

    /// Laurent expansion of the chord's classical cluster variable.
    ClassicalPoly variable(const Chord& c) {
        auto it = memo_.find(c);
        if (it != memo_.end()) return it->second;
        if (T0_.has_edge(c)) {
            ClassicalPoly p = classical_monomial(expvec_unit(m_, T0_.edge_index(c)));
            memo_.emplace(c, p);
            return p;
        }
        const Triangulation tc = canonical_completion(T0_.disk(), {c});
        // Walk the flip path, maintaining the variable assignment per edge.
        std::map<Chord, ClassicalPoly> assign;
        for (const Chord& e : T0_.edges())
            assign[e] = classical_monomial(expvec_unit(m_, T0_.edge_index(e)));
        Triangulation cur = T0_;
        for (const Chord& k : flip_path(T0_, tc)) {
            const ExchangeData ex = exchange_data(cur);
            const int kpos = cur.edge_index(k);
            ClassicalPoly plus = classical_monomial(ExpVec(m_, 0));
            ClassicalPoly minus = plus;
            for (int i = 0; i < cur.edge_count(); ++i) {
                const long long bik = -ex.epsilon.at(i, kpos);
                const Chord ei = cur.edges()[i];
                if (bik > 0) plus = classical_mul(plus, classical_pow(assign.at(ei), static_cast<int>(bik)));
                if (bik < 0) minus = classical_mul(minus, classical_pow(assign.at(ei), static_cast<int>(-bik)));
            }
            const FlipResult fr = flip(cur, k);
            ClassicalPoly fresh = classical_div(classical_add(plus, minus), assign.at(k));
            assign.erase(k);
            assign.emplace(fr.added, std::move(fresh));
            cur = fr.tri;
        }
        for (const auto& [e, p] : assign) memo_.emplace(e, p);
        return memo_.at(c);
    }

    /// Classical frame monomial: prod_i variable(i)^{w_i} as a fraction
    /// (numerator, denominator monomial).
    std::pair<ClassicalPoly, ClassicalPoly> monomial_fraction(const std::map<Chord, int>& weights) {
        ClassicalPoly num = classical_monomial(ExpVec(m_, 0));
        ClassicalPoly den = num;
        for (const auto& [c, w] : weights) {
            if (w > 0) num = classical_mul(num, classical_pow(variable(c), w));
            if (w < 0) den = classical_mul(den, classical_pow(variable(c), -w));
        }
        return {num, den};
    }

    /// prod_i variable(i)^{w_i} when the denominator clears (it always does
    /// for laminations: negative weights only sit on frozen boundary edges).
    ClassicalPoly monomial(const std::map<Chord, int>& weights) {
        auto [num, den] = monomial_fraction(weights);
        return classical_div(num, den);
    }

private:
    Triangulation T0_;
    int m_;
    std::map<Chord, ClassicalPoly> memo_;
};

/// Rewrites a classical Laurent polynomial in the chart's X-coordinates
/// X_j = prod_i A_i^{eps_{ji}}; throws when an exponent falls outside.
inline ClassicalPoly classical_to_x(const ClassicalPoly& p, const IntMat& eps, const IntMat& lambda,
                                    const std::vector<int>& internal) {
    ClassicalPoly r;
    for (const auto& [v, c] : p) {
        auto a = x_coordinates(eps, lambda, internal, v);
        if (!a) throw std::domain_error("classical X-coordinate change failed");
        classical_add_term(r, *a, c);
    }
    return r;
}

}  // namespace qdisk
