/**
 * @file verify.hpp
 * @brief Machine-checkable verification suites over the library: every
 *        property the acceptance gate runs, parameterized so the CLI can
 *        drive them at other scales.
 */
#pragma once

#include "qdisk/classical.hpp"
#include "qdisk/cluster.hpp"
#include "qdisk/dchart.hpp"
#include "qdisk/dilog.hpp"
#include "qdisk/duality.hpp"
#include "qdisk/io.hpp"
#include "qdisk/lamination.hpp"
#include "qdisk/polygon.hpp"
#include "qdisk/skein.hpp"

#include <functional>
#include <future>
#include <map>
#include <string>
#include <thread>
#include <vector>

namespace qdisk {

struct SuiteResult {
    std::string name;
    bool pass = true;
    long checks = 0;

    void record(bool ok, long count = 1) {
        checks += count;
        pass = pass && ok;
    }
};

/// Flip involutivity and flip/matrix-mutation consistency.
inline SuiteResult run_mutation_suite(int nmin = 4, int nmax = 7) {
    SuiteResult r{"mutation"};
    for (int n = nmin; n <= nmax; ++n) {
        for (const Triangulation& T : enumerate_triangulations(MarkedDisk(n))) {
            const IntMat eps = exchange_data(T).epsilon;
            for (const Chord& d : T.diagonals()) {
                const FlipResult fr = flip(T, d);
                r.record(flip(fr.tri, fr.added).tri == T);
                const IntMat mutated = mutate_matrix(eps, T.edge_index(d));
                // Compare against the recomputed matrix of the flipped
                // triangulation under the endpoint identification.
                const IntMat eps2 = exchange_data(fr.tri).epsilon;
                bool same = true;
                auto map_edge = [&](int i) {
                    const Chord c = T.edges()[i];
                    return fr.tri.edge_index(c == d ? fr.added : c);
                };
                for (int i = 0; i < T.edge_count() && same; ++i)
                    for (int j = 0; j < T.edge_count(); ++j)
                        if (mutated.at(i, j) != eps2.at(map_edge(i), map_edge(j))) {
                            same = false;
                            break;
                        }
                r.record(same);
                r.record(mutate_matrix(mutated, T.edge_index(d)) == eps);
            }
        }
    }
    return r;
}

/// Muller compatibility B^t Lambda = (4 Id | 0) over all triangulations.
inline SuiteResult run_compat_suite(int nmax = 8) {
    SuiteResult r{"compat"};
    for (int n = 3; n <= nmax; ++n) {
        for (const Triangulation& T : enumerate_triangulations(MarkedDisk(n))) {
            bool ok = true;
            try {
                exchange_data(T);  // throws on compatibility failure
            } catch (const std::exception&) {
                ok = false;
            }
            r.record(ok);
        }
    }
    return r;
}

/// Chart commutation relations (X/X, B/B, X/B and the central X-hat).
inline SuiteResult run_commutation_suite(int nmax = 7) {
    SuiteResult r{"commutation"};
    for (int n = 4; n <= nmax; ++n) {
        for (const Triangulation& T : enumerate_triangulations(MarkedDisk(n))) {
            DoubleChart D(T);
            for (int i : D.internal_positions())
                for (int j : D.internal_positions()) {
                    const OmegaLaurent q2e =
                        OmegaLaurent::monomial(static_cast<int>(8 * D.eps().at(i, j)));
                    r.record(D.X(i) * D.X(j) == q2e * (D.X(j) * D.X(i)));
                    r.record(D.B(i) * D.B(j) == D.B(j) * D.B(i));
                    const OmegaLaurent q2d = OmegaLaurent::monomial(i == j ? 8 : 0);
                    r.record(D.X(i) * D.B(j) == q2d * (D.B(j) * D.X(i)));
                }
            for (int k : D.internal_positions())
                r.record(D.X(k) * D.Xhat(k) == D.Xhat(k) * D.X(k));
        }
    }
    return r;
}

/// X and B transformation formulas under every flip.
inline SuiteResult run_transformation_suite(int nmin = 4, int nmax = 6) {
    SuiteResult r{"transformation"};
    for (int n = nmin; n <= nmax; ++n) {
        for (const Triangulation& T : enumerate_triangulations(MarkedDisk(n))) {
            for (const Chord& k : T.diagonals()) {
                const MutationCheckReport rx = verify_x_mutation(T, k);
                r.record(rx.pass, rx.cases);
                const MutationCheckReport rb = verify_b_mutation(T, k);
                r.record(rb.pass, rb.cases);
            }
        }
    }
    return r;
}

namespace verify_detail {

inline std::vector<std::map<Chord, int>> monomial_population(const Triangulation& T,
                                                             int diag_bound,
                                                             int boundary_total) {
    std::vector<std::map<Chord, int>> out{{}};
    for (const Chord& d : T.diagonals()) {
        std::vector<std::map<Chord, int>> next;
        for (const auto& w : out)
            for (int k = 0; k <= diag_bound; ++k) {
                auto w2 = w;
                if (k > 0) w2[d] = k;
                next.push_back(std::move(w2));
            }
        out = std::move(next);
    }
    std::vector<std::map<Chord, int>> withbd;
    const std::vector<Chord> bd = Triangulation::boundary_edges(T.disk());
    std::vector<std::map<Chord, int>> acc{{}};
    for (const Chord& b : bd) {
        std::vector<std::map<Chord, int>> next;
        for (const auto& p : acc) {
            int used = 0;
            for (const auto& [c, k] : p) used += k;
            for (int k = 0; k + used <= boundary_total; ++k) {
                auto p2 = p;
                if (k > 0) p2[b] = k;
                next.push_back(std::move(p2));
            }
        }
        acc = std::move(next);
    }
    for (const auto& w : out)
        for (const auto& p : acc) {
            auto w2 = w;
            for (const auto& [c, k] : p) w2[c] = k;
            withbd.push_back(std::move(w2));
        }
    return withbd;
}

}  // namespace verify_detail

/// Skein/torus oracle equivalence:
/// to_chart(superpose(K, L)) == to_chart(K) to_chart(L).
/// Exhaustive over all monomials with weights <= 2 on n = 4 (all edges) and
/// n = 5 (diagonals exhaustive, boundary total <= 2); strided sample on
/// n = 6.
inline SuiteResult run_skein_oracle_suite(bool include_hexagon = true) {
    SuiteResult r{"skein-oracle"};
    for (int n = 4; n <= 5; ++n) {
        MarkedDisk disk(n);
        auto tris = enumerate_triangulations(disk);
        ClusterCache cache(tris[0]);
        std::map<Multicurve, TorusElement> uniq;
        for (const Triangulation& T : tris)
            for (const auto& w : verify_detail::monomial_population(T, 2, 2)) {
                Multicurve m;
                for (const auto& [c, k] : w)
                    if (k > 0) m[c] = k;
                if (!uniq.contains(m)) uniq.emplace(m, to_chart(SkeinElement::basis(m), cache));
            }
        for (const auto& [mk, tk] : uniq)
            for (const auto& [ml, tl] : uniq)
                r.record(to_chart(superpose(disk, mk, ml), cache) == tk * tl);
    }
    if (include_hexagon) {
        MarkedDisk disk(6);
        auto tris = enumerate_triangulations(disk);
        ClusterCache cache(tris[0]);
        std::vector<Multicurve> pop;
        for (size_t ti = 0; ti < tris.size(); ti += 3)
            for (const auto& w : verify_detail::monomial_population(tris[ti], 2, 0)) {
                Multicurve m;
                for (const auto& [c, k] : w)
                    if (k > 0) m[c] = k;
                pop.push_back(std::move(m));
            }
        std::map<Multicurve, TorusElement> uniq;
        for (const auto& m : pop)
            if (!uniq.contains(m)) uniq.emplace(m, to_chart(SkeinElement::basis(m), cache));
        long done = 0;
        const size_t stride = std::max<size_t>(1, (pop.size() * pop.size()) / 260);
        for (size_t idx = 0; idx < pop.size() * pop.size() && done < 256; idx += stride) {
            const Multicurve& K = pop[idx / pop.size()];
            const Multicurve& L = pop[idx % pop.size()];
            r.record(to_chart(superpose(disk, K, L), cache) == uniq.at(K) * uniq.at(L));
            ++done;
        }
    }
    return r;
}

/// I_A^q properties on every pentagon lamination with diagonal weights <= 2
/// and a sampled hexagon population.
inline SuiteResult run_ia_props_suite(int hexagon_samples = 100) {
    SuiteResult r{"ia-props"};
    {
        MarkedDisk pent(5);
        Triangulation chart(pent, {Chord(0, 2), Chord(0, 3)});
        DualityContext ctx(chart);
        for (const ALamination& l : enumerate_alaminations(pent, 2, 0)) {
            const IAPropsReport rep = verify_ia_properties(l, ctx);
            r.record(rep.positivity && rep.classical_limit && rep.star_invariant &&
                         rep.highest_term,
                     4);
        }
    }
    if (hexagon_samples > 0) {
        MarkedDisk hex(6);
        Triangulation chart = canonical_completion(hex, {});
        DualityContext ctx(chart);
        auto all = enumerate_alaminations(hex, 2, 1);
        const size_t stride = std::max<size_t>(1, all.size() / hexagon_samples);
        int done = 0;
        for (size_t i = 0; i < all.size() && done < hexagon_samples; i += stride, ++done) {
            const IAPropsReport rep = verify_ia_properties(all[i], ctx);
            r.record(rep.positivity && rep.classical_limit && rep.star_invariant &&
                         rep.highest_term,
                     4);
        }
    }
    return r;
}

/// Quantum F-polynomial normalization for every cluster variable, n <= nmax.
inline SuiteResult run_fpoly_suite(int nmax = 8) {
    SuiteResult r{"f-polynomials"};
    for (int n = 4; n <= nmax; ++n) {
        MarkedDisk disk(n);
        for (const Triangulation& T : enumerate_triangulations(disk)) {
            ClusterCache cache(T);
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    if (a == 0 && b == n - 1) continue;
                    const FPolyData d = cache.f_polynomial(Chord(a, b));
                    const ExpVec zero(T.internal_indices().size(), 0);
                    r.record(d.lambda_shift == 0 && d.f.coefficients_nonneg_q() &&
                                 d.f.terms().count(zero) == 1 &&
                                 d.f.terms().at(zero) == OmegaLaurent(1),
                             3);
                }
        }
    }
    return r;
}

/// Structure constants: termination, q-Laurent coefficients, and the exact
/// reconstruction identity (checked inside structure_constants).
inline SuiteResult run_structure_suite(int weight2_samples = 50) {
    SuiteResult r{"structure"};
    MarkedDisk pent(5);
    Triangulation chart(pent, {Chord(0, 2), Chord(0, 3)});
    DualityContext ctx(chart);
    const auto ones = enumerate_alaminations(pent, 1, 0);
    for (const auto& a : ones)
        for (const auto& b : ones) {
            bool ok = true, qlaurent = true;
            try {
                qlaurent = structure_constants(a, b, ctx).all_q_laurent;
            } catch (const std::exception&) {
                ok = false;
            }
            r.record(ok && qlaurent, 2);
        }
    // Sampled weight-2 pairs.
    const auto twos = enumerate_alaminations(pent, 2, 0);
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < twos.size(); ++i)
        for (size_t j = 0; j < twos.size(); ++j) pairs.emplace_back(i, j);
    const size_t stride = std::max<size_t>(1, pairs.size() / weight2_samples);
    int done = 0;
    for (size_t i = 0; i < pairs.size() && done < weight2_samples; i += stride, ++done) {
        bool ok = true, qlaurent = true;
        try {
            qlaurent = structure_constants(twos[pairs[i].first], twos[pairs[i].second], ctx)
                           .all_q_laurent;
        } catch (const std::exception&) {
            ok = false;
        }
        r.record(ok && qlaurent, 2);
    }
    return r;
}

/// Quantum dilogarithm layer: functional equations, conjugation closed
/// forms, and the composite transformation formulas.
inline SuiteResult run_dilog_suite(int psi_order = 12, int order = 8) {
    SuiteResult r{"dilog"};
    {
        const DilogReport rep = verify_psi_functional_equations(psi_order);
        r.record(rep.pass, rep.cases);
    }
    MarkedDisk pent(5);
    for (const Triangulation& T : enumerate_triangulations(pent)) {
        DilogChart D(T);
        for (int k : T.internal_indices()) {
            const DilogReport ra = verify_conjugation_closed_forms(D, k, order);
            r.record(ra.pass, ra.cases);
            const DilogReport rc = verify_thm_transformation(D, k, order);
            r.record(rc.pass, rc.cases);
        }
    }
    // Hexagon charts, deterministic sample of three.
    MarkedDisk hex(6);
    auto tris = enumerate_triangulations(hex);
    for (size_t ti = 0; ti < tris.size(); ti += 6) {
        DilogChart D(tris[ti]);
        for (int k : tris[ti].internal_indices()) {
            const DilogReport ra = verify_conjugation_closed_forms(D, k, order);
            r.record(ra.pass, ra.cases);
            const DilogReport rc = verify_thm_transformation(D, k, order);
            r.record(rc.pass, rc.cases);
        }
    }
    return r;
}

/// N_l is identical across every chart of the pentagon and hexagon.
inline SuiteResult run_nl_suite(int samples = 100) {
    SuiteResult r{"nl"};
    for (int n = 5; n <= 6; ++n) {
        MarkedDisk disk(n);
        auto pool = enumerate_dlaminations(disk, 2, samples);
        std::vector<std::unique_ptr<DualityContext>> ctxs;
        for (const Triangulation& T : enumerate_triangulations(disk))
            ctxs.push_back(std::make_unique<DualityContext>(T));
        for (const auto& dl : pool) {
            const long long v0 = n_l(dl, *ctxs[0]);
            bool same = true;
            for (auto& c : ctxs) same &= (n_l(dl, *c) == v0);
            r.record(same, static_cast<long>(ctxs.size()));
        }
    }
    return r;
}

/// The commuting square pi^q o I_D^q o phi = I_A^q on the pentagon, plus the
/// classical limit of I_D^q against the independent commutative evaluation.
inline SuiteResult run_pi_q_suite() {
    SuiteResult r{"pi-q"};
    MarkedDisk pent(5);
    for (const Triangulation& chart : enumerate_triangulations(pent)) {
        DualityContext ctx(chart);
        for (const ALamination& l : enumerate_alaminations(pent, 2, 0))
            r.record(verify_pi_q_compatibility(l, ctx));
    }

    // Classical limit of I_D^q: cross-multiplied comparison in the
    // commutative double ring (front variables A_i, back variables A°_j with
    // boundary identification).
    Triangulation chart(pent, {Chord(0, 2), Chord(0, 3)});
    DualityContext ctx(chart);
    const int m = chart.edge_count();
    const auto& J = ctx.cache().internal_positions();
    const int rr = static_cast<int>(J.size());
    const int nv = m + rr;
    ClassicalCluster front(chart);
    auto backvar = [&](int pos) {
        for (int j = 0; j < rr; ++j)
            if (J[j] == pos) return m + j;
        return pos;
    };
    auto eval_x_monomial = [&](const ExpVec& a) {
        ExpVec w(nv, 0);
        for (int j = 0; j < rr; ++j)
            for (int i = 0; i < m; ++i)
                w[i] += a[j] * static_cast<int>(ctx.cache().eps().at(J[j], i));
        for (int j = 0; j < rr; ++j) {
            w[m + j] += a[rr + j];
            w[J[j]] -= a[rr + j];
        }
        return w;
    };
    auto pool = enumerate_dlaminations(pent, 2, 40);
    for (const auto& dl : pool) {
        const IDResult res = i_d_q(dl, ctx);
        ClassicalPoly art_num;
        for (const auto& [v, c] : res.numerator.terms()) {
            const Int x = c.eval_one();
            if (x != 0) classical_add_term(art_num, eval_x_monomial(v), x);
        }
        ClassicalPoly art_den = classical_monomial(ExpVec(nv, 0));
        for (const auto& [den, mult] : res.denominators) {
            ClassicalPoly d;
            for (const auto& [a, c] : den.terms()) {
                ExpVec full(2 * rr, 0);
                for (int j = 0; j < rr; ++j) full[j] = a[j];
                const Int x = c.eval_one();
                if (x != 0) classical_add_term(d, eval_x_monomial(full), x);
            }
            for (int t = 0; t < mult; ++t) art_den = classical_mul(art_den, d);
        }
        ClassicalPoly orc_den;
        {
            ClassicalPoly p = front.monomial(dl.front);
            for (const auto& [v, c] : p) {
                ExpVec w(nv, 0);
                for (int i = 0; i < m; ++i) w[i] = v[i];
                classical_add_term(orc_den, w, c);
            }
        }
        ClassicalPoly orc_num;
        {
            ClassicalPoly p = front.monomial(dl.back);
            for (const auto& [v, c] : p) {
                ExpVec w(nv, 0);
                for (int i = 0; i < m; ++i) w[backvar(i)] += v[i];
                classical_add_term(orc_num, w, c);
            }
        }
        r.record(classical_mul(art_num, orc_den) == classical_mul(orc_num, art_den));
    }
    return r;
}

/// g-vector alternating sums over all closed vertex walks of bounded length.
inline SuiteResult run_gsum_suite(int max_len = 6) {
    SuiteResult r{"gsum"};
    for (int n = 5; n <= 6; ++n) {
        MarkedDisk disk(n);
        for (const Triangulation& T : enumerate_triangulations(disk)) {
            DualityContext ctx(T);
            // Closed walks of even length <= max_len: consecutive vertices
            // distinct, including the wraparound step.
            std::vector<int> cur;
            std::function<void(int)> rec = [&](int len) {
                if (static_cast<int>(cur.size()) == len) {
                    r.record(verify_gsum(cur, ctx).pass);
                    return;
                }
                for (int v = 0; v < n; ++v) {
                    if (v == cur.back()) continue;
                    if (static_cast<int>(cur.size()) == len - 1 && v == cur[0]) continue;
                    cur.push_back(v);
                    rec(len);
                    cur.pop_back();
                }
            };
            for (int len = 2; len <= max_len; len += 2) {
                for (int v0 = 0; v0 < n; ++v0) {
                    cur = {v0};
                    rec(len);
                    cur.clear();
                }
            }
        }
    }
    return r;
}

}  // namespace qdisk
