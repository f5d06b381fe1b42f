/**
 * @file duality.hpp
 * @brief The duality maps: I_A^q into the X-chart torus, I_D^q into the
 *        D-chart normal form, the projection pi^q, structure constants, and
 *        verifiers for the transformation and g-vector statements.
 */
#pragma once

#include "qdisk/classical.hpp"
#include "qdisk/cluster.hpp"
#include "qdisk/dchart.hpp"
#include "qdisk/lamination.hpp"
#include "qdisk/skein.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qdisk {

/// Shared expansion state for one chart: the front and reversed-orientation
/// cluster caches and the double chart.
class DualityContext {
public:
    explicit DualityContext(const Triangulation& T)
        : chart_(T), dchart_(T), cache_(T, +1), cacheo_(T, -1), classical_(T) {}

    const Triangulation& chart() const { return chart_; }
    const DoubleChart& dchart() const { return dchart_; }
    ClusterCache& cache() { return cache_; }
    ClusterCache& cache_reversed() { return cacheo_; }
    ClassicalCluster& classical() { return classical_; }

private:
    Triangulation chart_;
    DoubleChart dchart_;
    ClusterCache cache_;
    ClusterCache cacheo_;
    ClassicalCluster classical_;
};

struct IAResult {
    Triangulation chart;
    TorusElement value;  // X-chart torus element
};

/// I_A^q(l) expanded in the given chart: the frame monomial of the weight
/// vector on a triangulation carrying the lamination, re-expressed in X
/// coordinates.
inline IAResult i_a_q(const ALamination& l, DualityContext& ctx) {
    ValidationReport v = validate(l);
    if (!v.ok) throw std::invalid_argument("i_a_q: invalid lamination: " + v.violation);
    std::vector<Chord> curves;
    for (const auto& [c, w] : l.weights) curves.push_back(c);
    const Triangulation Tl = canonical_completion(l.disk, curves);
    TorusElement base = ctx.cache().expand_frame_monomial(Tl, l.weights);
    return IAResult{ctx.chart(), ctx.cache().to_x_chart(base)};
}

/// The classical I_A(l) in commutative X coordinates (independent oracle).
inline ClassicalPoly i_a_classical(const ALamination& l, DualityContext& ctx) {
    std::vector<Chord> curves;
    for (const auto& [c, w] : l.weights) curves.push_back(c);
    (void)canonical_completion(l.disk, curves);  // validates noncrossing
    ClassicalPoly p = ctx.classical().monomial(l.weights);
    return classical_to_x(p, ctx.cache().eps(), ctx.cache().lambda(),
                          ctx.cache().internal_positions());
}

struct IAPropsReport {
    bool positivity = false;      // coefficients in Z_{>=0}[q,q^-1]
    bool classical_limit = false; // w=1 equals the commutative oracle
    bool star_invariant = false;
    bool highest_term = false;    // leading coefficient q^{-sum eps a a}
    bool pass() const { return positivity && classical_limit && star_invariant && highest_term; }
};

inline IAPropsReport verify_ia_properties(const ALamination& l, DualityContext& ctx) {
    IAPropsReport rep;
    const IAResult r = i_a_q(l, ctx);
    rep.positivity = r.value.coefficients_nonneg_q();
    rep.classical_limit = r.value.eval_omega_one() == i_a_classical(l, ctx);
    rep.star_invariant = r.value.star() == r.value;
    if (!r.value.is_zero()) {
        const auto [a, coeff] = r.value.leading_term();
        // In the symmetrized monomial basis the ordered-product coefficient
        // q^{-sum_{i<j} eps_ij a_i a_j} is split off; the stored leading
        // coefficient must be exactly 1.
        const auto& J = ctx.cache().internal_positions();
        long long s = 0;
        for (size_t i = 0; i < J.size(); ++i)
            for (size_t j = i + 1; j < J.size(); ++j)
                s += ctx.cache().eps().at(J[i], J[j]) * a[i] * a[j];
        const OmegaLaurent ordered_coeff = coeff * OmegaLaurent::q_power(static_cast<int>(-s));
        rep.highest_term = ordered_coeff == OmegaLaurent::q_power(static_cast<int>(-s));
    }
    return rep;
}

/// c^q(l, l'; .) with the reconstruction identity checked exactly.
struct StructureConstants {
    std::map<ALamination, OmegaLaurent> coefficients;
    bool all_q_laurent = true;
};

inline StructureConstants structure_constants(const ALamination& l, const ALamination& lp,
                                              DualityContext& ctx) {
    for (const auto* x : {&l, &lp}) {
        ValidationReport v = validate(*x);
        if (!v.ok) throw std::invalid_argument("structure_constants: invalid lamination");
    }
    const MarkedDisk disk = l.disk;

    auto split = [](const std::map<Chord, int>& w) {
        std::pair<std::map<Chord, int>, std::map<Chord, int>> r;  // (plus, minus)
        for (const auto& [c, k] : w) {
            if (k > 0) r.first[c] = k;
            if (k < 0) r.second[c] = k;
        }
        return r;
    };
    auto [wplus, wminus] = split(l.weights);
    auto [wpplus, wpminus] = split(lp.weights);

    auto lam_pair = [&](const Triangulation& T, const std::map<Chord, int>& u,
                        const std::map<Chord, int>& v) {
        const ExchangeData ex = exchange_data(T);
        ExpVec uu(T.edge_count(), 0), vv(T.edge_count(), 0);
        for (const auto& [c, k] : u) uu[T.edge_index(c)] = k;
        for (const auto& [c, k] : v) vv[T.edge_index(c)] = k;
        return form_eval(ex.lambda, uu, vv);
    };

    std::vector<Chord> lc, lpc;
    for (const auto& [c, w] : l.weights) lc.push_back(c);
    for (const auto& [c, w] : lp.weights) lpc.push_back(c);
    const Triangulation Tl = canonical_completion(disk, lc);
    const Triangulation Tlp = canonical_completion(disk, lpc);
    const long long N = lam_pair(Tl, wminus, wplus) + lam_pair(Tlp, wpplus, wpminus);

    const SkeinElement product = superpose(disk, wplus, wpplus);

    StructureConstants out;
    for (const auto& [K, d] : product.terms()) {
        std::vector<Chord> kc;
        for (const auto& [c, m] : K) kc.push_back(c);
        const Triangulation Ti = canonical_completion(disk, kc);
        // Reattach the negative boundary monomials:
        //   c_i = d * w^{N - L(w-, v) - L(w- + v, w'-)}.
        std::map<Chord, int> vplusminus = K;  // v + w- + w'-
        const long long ph1 = lam_pair(Ti, wminus, K);
        std::map<Chord, int> wmv = K;
        for (const auto& [c, k] : wminus) wmv[c] += k;
        const long long ph2 = lam_pair(Ti, wmv, wpminus);
        for (const auto& [c, k] : wminus) vplusminus[c] += k;
        for (const auto& [c, k] : wpminus) vplusminus[c] += k;
        for (auto it = vplusminus.begin(); it != vplusminus.end();)
            it = (it->second == 0) ? vplusminus.erase(it) : std::next(it);

        ALamination li{disk, vplusminus};
        if (!validate(li).ok) throw std::domain_error("peel failure");
        const OmegaLaurent ci =
            d * OmegaLaurent::monomial(static_cast<int>(N - ph1 - ph2));
        auto it = out.coefficients.find(li);
        if (it != out.coefficients.end()) throw std::domain_error("peel failure: collision");
        out.coefficients.emplace(std::move(li), ci);
        if (!ci.is_q_laurent()) out.all_q_laurent = false;
    }

    // Reconstruction: sum c_i I_A(l_i) = I_A(l) I_A(l').
    TorusElement lhs = TorusElement::zero(ctx.cache().x_form());
    for (const auto& [li, ci] : out.coefficients) lhs += ci * i_a_q(li, ctx).value;
    const TorusElement rhs = i_a_q(l, ctx).value * i_a_q(lp, ctx).value;
    if (lhs != rhs) throw std::logic_error("structure_constants: reconstruction failed");
    return out;
}

/// The chart-independent value of the g-vector pairing of a front arc
/// against a back arc.  For noncrossing pairs the same-orientation pairing
/// Lambda_T(g_c, g_{c'}) is the same in every chart and equals the clockwise
/// pairing of the chords; for crossing pairs that quantity flips sign across
/// g-fan walls, while the mixed-orientation pairing (front g-vector against
/// the reversed-disk g-vector) is constant at -2.  The two readings agree
/// wherever both are chart-independent, and this common refinement is what
/// makes the double duality map well-defined (its mod-4 class is what the
/// rationality theorem's q-integrality needs; see the g-pairing tests).
inline long long g_pairing(const MarkedDisk& disk, const Chord& front, const Chord& back) {
    if (chords_cross(front, back)) return -2;
    return lambda_geo(disk, front, back);
}

/// N_l = Lambda_T(g_C, g_C°): the pairing of the summed front and back
/// g-vectors, evaluated pairwise through its chart-independent values.
inline long long n_l(const DLamination& l, DualityContext& ctx) {
    ValidationReport v = validate(l);
    if (!v.ok) throw std::invalid_argument("n_l: invalid lamination: " + v.violation);
    long long total = 0;
    for (const auto& [c, w] : l.front)
        for (const auto& [co, wo] : l.back)
            total += static_cast<long long>(w) * wo * g_pairing(ctx.chart().disk(), c, co);
    return total;
}

/// Canonical rational presentation of I_D^q(l): an ordered denominator list
/// (inverted left to right) against a D-chart numerator.
struct IDResult {
    Triangulation chart;
    std::vector<std::pair<TorusElement, int>> denominators;  // (X-poly, multiplicity)
    TorusElement numerator;                                  // presentation form
    long long nl = 0;
};

namespace duality_detail {

/// Twist of an X-chart polynomial by conjugation with the frame monomial
/// M(v): each X-monomial a picks up q^{2 sum_j a_j v_{J_j}}.
inline TorusElement twist_by_frame_monomial(const TorusElement& f, const ExpVec& v,
                                            const std::vector<int>& internal) {
    TorusElement out = TorusElement::zero(f.form());
    for (const auto& [a, c] : f.terms()) {
        long long s = 0;
        for (size_t j = 0; j < internal.size(); ++j) s += static_cast<long long>(a[j]) * v[internal[j]];
        out.add_term(a, c * OmegaLaurent::monomial(static_cast<int>(8 * s)));
    }
    return out;
}

}  // namespace duality_detail

/// I_D^q(l) = w^{N_l} [C]^{-1} (x) [C°] in the canonical shape of the
/// rationality theorem.  (The displayed definition carries w^{-N_l}; with
/// both g-vectors computed on the front disk the commutative-square property
/// forces the opposite power, which is what the tests pin.)
inline IDResult i_d_q(const DLamination& l, DualityContext& ctx) {
    ValidationReport val = validate(l);
    if (!val.ok) throw std::invalid_argument("i_d_q: invalid lamination: " + val.violation);
    const MarkedDisk disk = ctx.chart().disk();
    const int m = ctx.chart().edge_count();
    const auto& internal = ctx.cache().internal_positions();

    IDResult out{ctx.chart(), {}, TorusElement::zero(ctx.dchart().presentation_form()), 0};
    out.nl = n_l(l, ctx);

    // Front: [C]^{-1} = w^{-alpha} (V_r ... V_1 reversed inverses); push the
    // g-monomials right to obtain twisted denominators against M_T(-g_C).
    std::vector<Chord> fc;
    for (const auto& [c, w] : l.front) fc.push_back(c);
    const Triangulation Tc = canonical_completion(disk, fc);
    const ExchangeData exc = exchange_data(Tc);
    ExpVec wfront(Tc.edge_count(), 0);
    for (const auto& [c, w] : l.front) wfront[Tc.edge_index(c)] = w;
    long long alpha = 0;
    for (int i = 0; i < Tc.edge_count(); ++i)
        for (int j = i + 1; j < Tc.edge_count(); ++j)
            alpha += exc.lambda.at(i, j) * wfront[i] * wfront[j];

    // Ordered factor list: edges of Tc ascending, each with multiplicity.
    std::vector<Chord> factors;
    for (const Chord& e : Tc.edges())
        for (int t = 0; t < wfront[Tc.edge_index(e)]; ++t) factors.push_back(e);

    long long phase = -alpha;
    ExpVec gacc(m, 0);
    std::vector<TorusElement> denoms;  // leftmost first
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        const FPolyData fp = ctx.cache().f_polynomial(*it);
        phase += form_eval(ctx.cache().lambda(), gacc, fp.g);
        for (int i = 0; i < m; ++i) gacc[i] -= fp.g[i];
        if (!fp.f.is_one())
            denoms.push_back(duality_detail::twist_by_frame_monomial(fp.f, gacc, internal));
    }

    // Back: 1 (x) M°_{T_C°}(w°), computed in the reversed-orientation cache.
    std::vector<Chord> bc;
    for (const auto& [c, w] : l.back) bc.push_back(c);
    const Triangulation Tco = canonical_completion(disk, bc);
    const TorusElement back = ctx.cache_reversed().expand_frame_monomial(Tco, l.back);

    // Numerator: w^{N_l + phase} A^{(-g_C, 0)} (1 (x) back), reduced.
    TorusElement front_mon =
        TorusElement::monomial(ctx.cache().base_form(), gacc,
                               OmegaLaurent::monomial(static_cast<int>(out.nl + phase)));
    TorusElement big = ctx.dchart().lift_front(front_mon) * ctx.dchart().lift_back(back);
    out.numerator = ctx.dchart().reduce_to_D_chart(big);

    // Group consecutive equal denominators.
    for (const TorusElement& d : denoms) {
        if (!out.denominators.empty() && out.denominators.back().first == d)
            out.denominators.back().second += 1;
        else
            out.denominators.emplace_back(d, 1);
    }
    return out;
}

/// pi^q applied to a presented I_D result: denominators are already X-only.
inline TorusElement pi_q_value_equals(const IDResult& id, const DualityContext& ctx,
                                      const TorusElement& ia_value) {
    // The identity D_r^{-1} ... D_1^{-1} NUM = ia clears to
    // NUM = D_1 D_2 ... D_r ia; the stored list is [D_r, ..., D_1], so the
    // leftmost stored denominator multiplies ia first.
    TorusElement acc = ia_value;
    for (const auto& [d, mult] : id.denominators)
        for (int t = 0; t < mult; ++t) acc = d * acc;
    (void)ctx;
    return acc;
}

/// Thm 5.6(3): pi^q(I_D^q(phi(l))) = I_A^q(l), checked by clearing the
/// denominators on the left.
inline bool verify_pi_q_compatibility(const ALamination& a, DualityContext& ctx) {
    const IDResult id = i_d_q(phi(a), ctx);
    const IAResult ia = i_a_q(a, ctx);
    const TorusElement lhs = ctx.dchart().specialize_B_to_one(id.numerator);
    return lhs == pi_q_value_equals(id, ctx, ia.value);
}

struct MutationCheckReport {
    bool pass = true;
    int cases = 0;
    std::string detail;
};

/// Prop "X-transformation": the flipped chart's X variables against the
/// three-case product formula, cleared by cross-multiplication.
inline MutationCheckReport verify_x_mutation(const Triangulation& T, const Chord& k) {
    MutationCheckReport rep;
    if (!T.is_internal(k)) throw std::invalid_argument("verify_x_mutation: not internal");
    QuantumSeed s = seed_from_triangulation(T);
    const int kpos = s.position_of(k);
    QuantumSeed mu = mutate_seed(s, kpos);
    const int m = static_cast<int>(s.edge_order.size());
    const FormPtr& base = s.frame.base_form;

    auto Xof = [&](int i) {
        ExpVec v(m, 0);
        for (int t = 0; t < m; ++t) v[t] = static_cast<int>(s.eps.at(i, t));
        return TorusElement::monomial(base, v);
    };
    const TorusElement Xk = Xof(kpos);

    for (int i : s.internal_pos) {
        ExpVec xp(m, 0);
        for (int t = 0; t < m; ++t) xp[t] = static_cast<int>(mu.eps.at(i, t));
        const FrameFraction fr = frame_value_fraction(mu.frame, xp);
        const OmegaLaurent ph = OmegaLaurent::monomial(static_cast<int>(-fr.phase));
        const long long e = s.eps.at(i, kpos);
        bool ok;
        if (i == kpos) {
            // X'_k = X_k^{-1}.
            ok = fr.num == ph * (fr.den * Xk.inverse_monomial());
        } else if (e <= 0) {
            TorusElement rhs = Xof(i);
            for (long long p = 0; p < -e; ++p)
                rhs = rhs * (TorusElement::unit(base) +
                             OmegaLaurent::q_power(static_cast<int>(2 * p + 1)) * Xk);
            ok = fr.num == ph * (fr.den * rhs);
        } else {
            // X'_i prod_p (X_k + q^{2p+1}) = X_i X_k^{e}.
            TorusElement lhs = fr.num;
            for (long long p = 0; p < e; ++p)
                lhs = lhs * (Xk + OmegaLaurent::q_power(static_cast<int>(2 * p + 1)) *
                                      TorusElement::unit(base));
            TorusElement rhs = Xof(i) * Xk.pow(static_cast<int>(e));
            ok = lhs == ph * (fr.den * rhs);
        }
        rep.cases += 1;
        if (!ok) {
            rep.pass = false;
            rep.detail = "X mutation failed at edge " + s.edge_order[i].label();
        }
    }
    return rep;
}

/// Prop "B-transformation": the flipped chart's B_k against
/// (q X_k B+ + B-) B_k^{-1} (1 + q^{-1} X_k)^{-1}, cleared on both sides,
/// plus B'_i = B_i for i != k.
inline MutationCheckReport verify_b_mutation(const Triangulation& T, const Chord& k) {
    MutationCheckReport rep;
    if (!T.is_internal(k)) throw std::invalid_argument("verify_b_mutation: not internal");
    DoubleChart D(T);
    QuantumSeed s = seed_from_triangulation(T, +1);
    QuantumSeed so = seed_from_triangulation(T, -1);
    const int kpos = s.position_of(k);
    QuantumSeed mu = mutate_seed(s, kpos);
    QuantumSeed muo = mutate_seed(so, kpos);
    const FormPtr& dform = D.double_form();

    // (1 (x) M_{(T')°}(e_k)) (1 + q^{-1} X_k) ==
    //      (M_{T'}(e_k) (x) 1) (q X_k B+_k + B-_k) B_k^{-1}.
    const TorusElement lhs =
        D.lift_back(muo.frame.values[kpos]) *
        (TorusElement::unit(dform) + OmegaLaurent::q_power(-1) * D.X(kpos));
    const TorusElement rhs =
        D.lift_front(mu.frame.values[kpos]) *
        (OmegaLaurent::q_power(1) * (D.X(kpos) * D.Bplus(kpos)) + D.Bminus(kpos)) *
        D.B(kpos).inverse_monomial();
    rep.cases += 1;
    if (lhs != rhs) {
        rep.pass = false;
        rep.detail = "B mutation failed at " + k.label();
    }

    // B'_i = B_i for i != k: the frame values at other positions are frozen
    // unit monomials, so B'_i is literally the generator.
    for (int i : s.internal_pos) {
        if (i == kpos) continue;
        const TorusElement bi = D.lift_front(mu.frame.values[i].inverse_monomial()) *
                                D.lift_back(muo.frame.values[i]);
        rep.cases += 1;
        if (bi != D.B(i)) {
            rep.pass = false;
            rep.detail = "B mutation failed at spectator " + T.edges()[i].label();
        }
    }
    return rep;
}

struct GsumReport {
    bool pass = false;
    std::vector<Int> coefficients;  // one solution over the eps rows
};

/// The alternating g-vector sum of a closed even vertex path lies in the
/// integer span of the eps rows.
inline GsumReport verify_gsum(const std::vector<int>& closed_path, DualityContext& ctx) {
    if (closed_path.size() < 2 || closed_path.size() % 2 != 0)
        throw std::invalid_argument("verify_gsum: need an even closed path");
    const int m = ctx.chart().edge_count();
    ExpVec s(m, 0);
    const size_t len = closed_path.size();
    for (size_t i = 1; i <= len; ++i) {
        const int va = closed_path[i - 1];
        const int vb = closed_path[i % len];
        const Chord c(va, vb);
        const ExpVec g = ctx.cache().g_vector(c);
        const int sign = (i % 2 == 0) ? 1 : -1;
        for (int t = 0; t < m; ++t) s[t] += sign * g[t];
    }
    std::vector<std::vector<Int>> cols;
    for (int i = 0; i < m; ++i) {
        std::vector<Int> col(m);
        for (int t = 0; t < m; ++t) col[t] = ctx.cache().eps().at(i, t);
        cols.push_back(std::move(col));
    }
    std::vector<Int> target(m);
    for (int t = 0; t < m; ++t) target[t] = s[t];
    auto sol = solve_integer(cols, target);
    GsumReport rep;
    rep.pass = sol.has_value();
    if (sol) rep.coefficients = *sol;
    return rep;
}

}  // namespace qdisk
