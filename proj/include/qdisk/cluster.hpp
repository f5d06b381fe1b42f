/**
 * @file cluster.hpp
 * @brief Quantum seeds on the disk: toric frames, frame mutation, cluster
 *        variable expansions, quantum F-polynomials and g-vectors.
 */
#pragma once

#include "qdisk/polygon.hpp"
#include "qdisk/torus.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace qdisk {

inline long long form_eval(const IntMat& m, const ExpVec& u, const ExpVec& v) {
    long long s = 0;
    for (int i = 0; i < m.rows; ++i) {
        if (u[i] == 0) continue;
        long long row = 0;
        for (int j = 0; j < m.cols; ++j) row += m.at(i, j) * v[j];
        s += u[i] * row;
    }
    return s;
}

inline FormPtr form_from_intmat(const IntMat& m, int scale = 1) {
    std::vector<std::vector<long long>> a(m.rows, std::vector<long long>(m.cols, 0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) a[i][j] = scale * m.at(i, j);
    return std::make_shared<SkewForm>(std::move(a));
}

/// A toric frame: values M(e_i) in an ambient torus together with the frame
/// compatibility form Lambda_M.
struct ToricFrame {
    FormPtr base_form;
    std::vector<TorusElement> values;
    IntMat lambda;

    int rank() const { return static_cast<int>(values.size()); }
};

namespace detail {

/// Ordered product with the Weyl prefactor for a nonnegative vector.
inline TorusElement frame_product_nonneg(const ToricFrame& M, const ExpVec& v) {
    long long phase = 0;
    for (int i = 0; i < M.rank(); ++i)
        for (int j = i + 1; j < M.rank(); ++j) phase += M.lambda.at(i, j) * v[i] * v[j];
    TorusElement r = TorusElement::monomial(M.base_form, ExpVec(M.base_form->rank(), 0),
                                            OmegaLaurent::monomial(static_cast<int>(phase)));
    for (int i = 0; i < M.rank(); ++i)
        for (int p = 0; p < v[i]; ++p) r *= M.values[i];
    return r;
}

}  // namespace detail

/// Left-fraction presentation of a frame monomial:
///   M(v) = w^{phase} * den^{-1} * num
/// with den = M(v_-gt0 negated part) and num = M(v_+) as ordered products.
struct FrameFraction {
    TorusElement den;
    TorusElement num;
    long long phase;
};

inline FrameFraction frame_value_fraction(const ToricFrame& M, const ExpVec& v) {
    ExpVec vp(v.size(), 0), vn(v.size(), 0);
    ExpVec vminus(v.size(), 0);
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] > 0) vp[i] = v[i];
        if (v[i] < 0) {
            vn[i] = -v[i];
            vminus[i] = v[i];
        }
    }
    TorusElement P = detail::frame_product_nonneg(M, vp);
    TorusElement D = detail::frame_product_nonneg(M, vn);
    return FrameFraction{std::move(D), std::move(P), form_eval(M.lambda, vminus, vp)};
}

/// Frame monomial M(v) for arbitrary v, clearing the negative part by exact
/// left division.  Throws when the value is not Laurent in the base torus;
/// sums of frame monomials sharing a negative part should be combined with
/// frame_value_fraction before dividing.
inline TorusElement frame_value(const ToricFrame& M, const ExpVec& v) {
    FrameFraction fr = frame_value_fraction(M, v);
    if (fr.den.is_one()) return OmegaLaurent::monomial(static_cast<int>(fr.phase)) * fr.num;
    return OmegaLaurent::monomial(static_cast<int>(fr.phase)) * torus_div_left(fr.den, fr.num);
}

/// The displayed ordered-monomial construction
///   M(v) = w^{sum_{i<j} Lambda(e_i,e_j) v_i v_j} prod_i M(e_i)^{v_i}.
/// Negative powers require monomial frame values.
inline TorusElement ordered_monomial(const ToricFrame& M, const ExpVec& v) {
    long long phase = 0;
    for (int i = 0; i < M.rank(); ++i)
        for (int j = i + 1; j < M.rank(); ++j) phase += M.lambda.at(i, j) * v[i] * v[j];
    TorusElement r = TorusElement::monomial(M.base_form, ExpVec(M.base_form->rank(), 0),
                                            OmegaLaurent::monomial(static_cast<int>(phase)));
    for (int i = 0; i < M.rank(); ++i) {
        if (v[i] == 0) continue;
        if (v[i] < 0 && !M.values[i].is_monomial())
            throw std::domain_error("ordered_monomial: non-invertible factor");
        r *= M.values[i].pow(v[i]);
    }
    return r;
}

/// A quantum seed: a toric frame indexed by the edges of a triangulation
/// (positions are stable across mutation) with the exchange matrix.
struct QuantumSeed {
    MarkedDisk disk;
    std::vector<Chord> edge_order;   // chord at each position
    std::vector<int> internal_pos;   // positions that are mutable (fixed set)
    IntMat eps;                      // full skew matrix in position indexing
    ToricFrame frame;
    int orientation = 1;             // +1 for S, -1 for the reversed disk

    Triangulation triangulation() const {
        std::vector<Chord> diags;
        for (int p : internal_pos) diags.push_back(edge_order[p]);
        return Triangulation(disk, std::move(diags));
    }
    int position_of(const Chord& c) const {
        for (size_t i = 0; i < edge_order.size(); ++i)
            if (edge_order[i] == c) return static_cast<int>(i);
        throw std::invalid_argument("position_of: chord not in seed");
    }
};

/// Identity seed of a triangulation: M(e_i) = A^{e_i}, Lambda = lambda_T.
/// orientation -1 builds the seed of the orientation-reversed disk (all
/// matrices negated).
inline QuantumSeed seed_from_triangulation(const Triangulation& T, int orientation = 1) {
    ExchangeData ex = exchange_data(T);
    const int m = T.edge_count();
    QuantumSeed s{T.disk(), T.edges(), T.internal_indices(), IntMat(m, m), ToricFrame{}, orientation};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) s.eps.at(i, j) = orientation * ex.epsilon.at(i, j);
    IntMat lam(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) lam.at(i, j) = orientation * ex.lambda.at(i, j);
    s.frame.base_form = form_from_intmat(lam);
    s.frame.lambda = lam;
    for (int i = 0; i < m; ++i)
        s.frame.values.push_back(TorusElement::monomial(s.frame.base_form, expvec_unit(m, i)));
    return s;
}

/// Seed mutation at position k: the two-term exchange relation for the new
/// frame value, Lambda' = E^t Lambda E, matrix mutation for eps, and the
/// flipped chord at position k.
inline QuantumSeed mutate_seed(const QuantumSeed& s, int k) {
    const int m = static_cast<int>(s.edge_order.size());
    bool mutable_pos = false;
    for (int p : s.internal_pos) mutable_pos |= (p == k);
    if (!mutable_pos) throw std::invalid_argument("mutate_seed: position not mutable");

    QuantumSeed r = s;

    // b-column at k in position indexing: b_{ik} = -eps_{ik}.
    ExpVec v1(m, 0), v2(m, 0);
    v1[k] = v2[k] = -1;
    for (int i = 0; i < m; ++i) {
        const long long bik = -s.eps.at(i, k);
        if (bik > 0) v1[i] += static_cast<int>(bik);
        if (bik < 0) v2[i] += static_cast<int>(-bik);
    }
    // The two exchange terms share the denominator M(e_k); only their sum is
    // Laurent, so combine before dividing.
    const FrameFraction f1 = frame_value_fraction(s.frame, v1);
    const FrameFraction f2 = frame_value_fraction(s.frame, v2);
    const TorusElement combined = OmegaLaurent::monomial(static_cast<int>(f1.phase)) * f1.num +
                                  OmegaLaurent::monomial(static_cast<int>(f2.phase)) * f2.num;
    r.frame.values[k] =
        f1.den.is_one() ? combined : torus_div_left(f1.den, combined);

    // Lambda' = E^t Lambda E with the sign-epsilon matrix (either sign).
    const int sign = 1;
    IntMat E(m, m);
    for (int i = 0; i < m; ++i) E.at(i, i) = 1;
    E.at(k, k) = -1;
    for (int i = 0; i < m; ++i) {
        if (i == k) continue;
        const long long bik = -s.eps.at(i, k);
        E.at(i, k) = std::max(0LL, -sign * bik);
    }
    IntMat lam(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            long long v = 0;
            for (int a2 = 0; a2 < m; ++a2)
                for (int b2 = 0; b2 < m; ++b2)
                    v += E.at(a2, i) * s.frame.lambda.at(a2, b2) * E.at(b2, j);
            lam.at(i, j) = v;
        }
    r.frame.lambda = lam;

    r.eps = mutate_matrix(s.eps, k);

    // Geometric flip for the chord at position k.
    FlipResult fr = flip(s.triangulation(), s.edge_order[k]);
    r.edge_order[k] = fr.added;
    return r;
}

/// The t-binomial expansion of a mutated frame monomial,
///   M'(v) = sum_p binom(v_k, p)_{w^-4} M(E_sign v + sign p b^k),  v_k >= 0.
/// Cross-check route for mutate_seed.
inline TorusElement frame_monomial_binomial_formula(const QuantumSeed& s, int k, const ExpVec& v,
                                                    int sign = 1) {
    const int m = static_cast<int>(s.edge_order.size());
    if (v[k] < 0) throw std::invalid_argument("frame_monomial_binomial_formula: v_k must be >= 0");
    ExpVec bcol(m, 0);
    for (int i = 0; i < m; ++i) bcol[i] = static_cast<int>(-s.eps.at(i, k));
    // E_sign v.
    ExpVec ev(v);
    ev[k] = -v[k];
    for (int i = 0; i < m; ++i)
        if (i != k) ev[i] += std::max(0, -sign * bcol[i]) * v[k];
    // Every summand carries the same negative part v_k e_k; sum the
    // numerators over the common denominator, then divide once.
    TorusElement num = TorusElement::zero(s.frame.base_form);
    TorusElement den = TorusElement::unit(s.frame.base_form);
    for (int p = 0; p <= v[k]; ++p) {
        OmegaLaurent coeff = t_binomial(v[k], p).to_laurent().value().scale_exponents(-4);
        ExpVec w(ev);
        for (int i = 0; i < m; ++i) w[i] += sign * p * bcol[i];
        const FrameFraction fr = frame_value_fraction(s.frame, w);
        num += coeff * (OmegaLaurent::monomial(static_cast<int>(fr.phase)) * fr.num);
        den = fr.den;
    }
    return den.is_one() ? num : torus_div_left(den, num);
}

/// Rows x_j = sum_s eps_{js} e_s of the exchange matrix (chord-keyed helper).
inline ExpVec eps_row(const IntMat& eps, int j) {
    ExpVec r(eps.cols, 0);
    for (int s = 0; s < eps.cols; ++s) r[s] = static_cast<int>(eps.at(j, s));
    return r;
}

/// The X-chart torus of a triangulation: coordinates indexed by internal
/// edges, form Lambda_X(e_i, e_j) = -4 eps_{ij}.
inline FormPtr x_chart_form(const IntMat& eps, const std::vector<int>& internal) {
    const int r = static_cast<int>(internal.size());
    std::vector<std::vector<long long>> a(r, std::vector<long long>(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) a[i][j] = -4 * eps.at(internal[i], internal[j]);
    return std::make_shared<SkewForm>(std::move(a));
}

/// Solves v = sum_j a_j x_j over the internal rows; nullopt if v is outside
/// that sublattice.  Uses Lambda(x_j, e_i) = 4 delta_{ji}.
inline std::optional<ExpVec> x_coordinates(const IntMat& eps, const IntMat& lambda,
                                           const std::vector<int>& internal, const ExpVec& v) {
    const int m = eps.rows;
    ExpVec a(internal.size(), 0);
    ExpVec check(m, 0);
    for (size_t jj = 0; jj < internal.size(); ++jj) {
        long long s = 0;
        for (int i = 0; i < m; ++i) s += v[i] * lambda.at(i, internal[jj]);
        if (s % 4 != 0) return std::nullopt;
        a[jj] = static_cast<int>(s / 4);
        for (int t = 0; t < m; ++t) check[t] += a[jj] * static_cast<int>(eps.at(internal[jj], t));
    }
    if (check != v) return std::nullopt;
    return a;
}

/// Quantum F-polynomial data of a cluster variable in a fixed chart.
struct FPolyData {
    TorusElement f;    // polynomial in the X-chart torus, constant term 1
    ExpVec g;          // extended g-vector in the chart's edge coordinates
    int lambda_shift;  // w-exponent split off to normalize the constant term
};

/// Expansion engine for one chart: caches seeds along flip paths and the
/// resulting cluster-variable expansions.
class ClusterCache {
public:
    explicit ClusterCache(const Triangulation& T0, int orientation = 1)
        : T0_(T0), base_(seed_from_triangulation(T0, orientation)) {
        ExchangeData ex = exchange_data(T0);
        eps_ = ex.epsilon;
        lambda_ = ex.lambda;
        if (orientation < 0) {
            for (auto& x : eps_.a) x = -x;
            for (auto& x : lambda_.a) x = -x;
        }
        internal_ = T0.internal_indices();
        xform_ = x_chart_form(eps_, internal_);
        seeds_.emplace(T0.diagonals(), base_);
    }

    const Triangulation& chart() const { return T0_; }
    const QuantumSeed& base_seed() const { return base_; }
    const IntMat& eps() const { return eps_; }
    const IntMat& lambda() const { return lambda_; }
    const std::vector<int>& internal_positions() const { return internal_; }
    const FormPtr& x_form() const { return xform_; }
    const FormPtr& base_form() const { return base_.frame.base_form; }

    const QuantumSeed& seed_for(const Triangulation& T) {
        std::lock_guard<std::mutex> lock(mu_);
        return seed_for_locked(T);
    }

    /// Laurent expansion of the chord class in this chart.
    TorusElement cluster_variable(const Chord& c) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(c);
        if (it != memo_.end()) return it->second;
        const Triangulation tc = canonical_completion(T0_.disk(), {c});
        const QuantumSeed& s = seed_for_locked(tc);
        for (size_t p = 0; p < s.edge_order.size(); ++p) memo_.emplace(s.edge_order[p], s.frame.values[p]);
        return memo_.at(c);
    }

    /// M_T(w) for a chord-weighted vector, expanded in this chart.
    TorusElement expand_frame_monomial(const Triangulation& T, const std::map<Chord, int>& weights) {
        std::lock_guard<std::mutex> lock(mu_);
        const QuantumSeed& s = seed_for_locked(T);
        ExpVec v(s.edge_order.size(), 0);
        for (const auto& [c, w] : weights) v[s.position_of(c)] = w;
        return frame_value(s.frame, v);
    }

    ExpVec g_vector(const Chord& c) { return f_polynomial(c).g; }

    FPolyData f_polynomial(const Chord& c) {
        const TorusElement V = cluster_variable(c);
        std::lock_guard<std::mutex> lock(mu_);
        auto it = fmemo_.find(c);
        if (it != fmemo_.end()) return it->second;
        FPolyData data = extract_f(V);
        fmemo_.emplace(c, data);
        return data;
    }

    /// Rewrites a base-torus element in X-chart coordinates.
    TorusElement to_x_chart(const TorusElement& e) const {
        TorusElement r = TorusElement::zero(xform_);
        for (const auto& [v, c] : e.terms()) {
            auto a = x_coordinates(eps_, lambda_, internal_, v);
            if (!a) throw std::domain_error("X-coordinate change failed");
            r.add_term(*a, c);
        }
        return r;
    }

private:
    const QuantumSeed& seed_for_locked(const Triangulation& T) {
        auto it = seeds_.find(T.diagonals());
        if (it != seeds_.end()) return it->second;
        const std::vector<Chord> path = flip_path(T0_, T);
        Triangulation cur = T0_;
        std::vector<Chord> walked;
        const QuantumSeed* sp = &seeds_.at(T0_.diagonals());
        for (const Chord& c : path) {
            FlipResult fr = flip(cur, c);
            auto next = seeds_.find(fr.tri.diagonals());
            if (next == seeds_.end()) {
                QuantumSeed ns = mutate_seed(*sp, sp->position_of(c));
                next = seeds_.emplace(fr.tri.diagonals(), std::move(ns)).first;
            }
            sp = &next->second;
            cur = fr.tri;
        }
        return *sp;
    }

    FPolyData extract_f(const TorusElement& V) const {
        std::optional<ExpVec> g;
        std::map<ExpVec, ExpVec> xcoords;  // support vector -> cone coordinates
        for (const auto& [v0, c0] : V.terms()) {
            bool ok = true;
            std::map<ExpVec, ExpVec> trial;
            for (const auto& [v, c] : V.terms()) {
                auto a = x_coordinates(eps_, lambda_, internal_, expvec_sub(v, v0));
                if (!a) {
                    ok = false;
                    break;
                }
                bool nonneg = true;
                for (int x : *a) nonneg &= (x >= 0);
                if (!nonneg) {
                    ok = false;
                    break;
                }
                trial.emplace(v, *a);
            }
            if (ok) {
                if (g) throw std::domain_error("g-vector extraction failed: not unique");
                g = v0;
                xcoords = std::move(trial);
            }
        }
        if (!g) throw std::domain_error("g-vector extraction failed: no apex");

        TorusElement f = TorusElement::zero(xform_);
        for (const auto& [v, c] : V.terms()) {
            const long long phase = form_eval(lambda_, v, *g);
            f.add_term(xcoords.at(v), OmegaLaurent::monomial(static_cast<int>(phase)) * c);
        }
        // Normalize the constant term to 1 and record the split-off power.
        const ExpVec zero(internal_.size(), 0);
        auto it = f.terms().find(zero);
        if (it == f.terms().end()) throw std::domain_error("F-polynomial without constant term");
        const OmegaLaurent c0 = it->second;
        int shift = 0;
        if (!c0.is_one()) {
            if (c0.terms().size() != 1 || c0.terms().begin()->second != 1)
                throw std::domain_error("F-polynomial constant term is not a unit");
            shift = c0.terms().begin()->first;
            f = OmegaLaurent::monomial(-shift) * f;
        }
        return FPolyData{std::move(f), *g, shift};
    }

    Triangulation T0_;
    QuantumSeed base_;
    IntMat eps_, lambda_;
    std::vector<int> internal_;
    FormPtr xform_;
    std::map<std::vector<Chord>, QuantumSeed> seeds_;
    std::map<Chord, TorusElement> memo_;
    std::map<Chord, FPolyData> fmemo_;
    mutable std::mutex mu_;
};

}  // namespace qdisk
