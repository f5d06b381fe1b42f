/**
 * @file skein.hpp
 * @brief The skein algebra of the marked disk: simple multicurves as a
 *        basis and the superposition product computed by resolving
 *        crossings.
 *
 * Conventions (pinned by the to_chart oracle tests):
 *  - resolving a crossing of an over-strand a against an under-strand b
 *    gives w^{+2} for the smoothing that joins each a-ray to the b-ray
 *    counterclockwise-adjacent to it, w^{-2} for the other;
 *  - a contractible loop evaluates to -(w^4 + w^-4);
 *  - an arc returning to its starting marked point kills the term;
 *  - merging the over/under order at the marked points into the
 *    simultaneous order contributes w^{-Lambda(u,v)} in total, where
 *    Lambda is the clockwise pairing of the chord weight vectors.
 */
#pragma once

#include "qdisk/cluster.hpp"
#include "qdisk/polygon.hpp"
#include "qdisk/torus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace qdisk {

/// Multiset of chords.  Simple iff the distinct chords are pairwise
/// noncrossing (parallel copies never cross).
using Multicurve = std::map<Chord, int>;

inline bool multicurve_is_simple(const Multicurve& c) {
    for (auto i = c.begin(); i != c.end(); ++i) {
        if (i->second <= 0) return false;
        for (auto j = std::next(i); j != c.end(); ++j)
            if (chords_cross(i->first, j->first)) return false;
    }
    return true;
}

/// Clockwise pairing of two chords: +1 if they share a vertex and c1 is
/// clockwise to c2 there, -1 for the reverse, 0 otherwise.  Agrees with the
/// lambda matrix of any triangulation containing both chords.
inline int lambda_geo(const MarkedDisk& disk, const Chord& c1, const Chord& c2) {
    if (c1 == c2) return 0;
    int s = 0;
    for (int v : {c1.a, c1.b}) {
        if (v != c2.a && v != c2.b) continue;
        const int u1 = (c1.a == v) ? c1.b : c1.a;
        const int u2 = (c2.a == v) ? c2.b : c2.a;
        s += (fan_distance(disk, v, u1) < fan_distance(disk, v, u2)) ? 1 : -1;
    }
    return s;
}

/// sum_{i,j} u_i v_j lambda_geo(i, j) over two weighted chord systems.
inline long long lambda_geo_pairing(const MarkedDisk& disk, const Multicurve& u,
                                    const Multicurve& v) {
    long long s = 0;
    for (const auto& [ci, wi] : u)
        for (const auto& [cj, wj] : v)
            s += static_cast<long long>(wi) * wj * lambda_geo(disk, ci, cj);
    return s;
}

class SkeinElement {
public:
    SkeinElement() = default;

    static SkeinElement basis(Multicurve c, OmegaLaurent coeff = OmegaLaurent(1)) {
        if (!multicurve_is_simple(c)) throw std::invalid_argument("SkeinElement: not simple");
        SkeinElement r;
        if (!coeff.is_zero()) r.terms_.emplace(std::move(c), std::move(coeff));
        return r;
    }
    static SkeinElement unit() { return basis(Multicurve{}); }

    const std::map<Multicurve, OmegaLaurent>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Multicurve& c, const OmegaLaurent& coeff) {
        if (coeff.is_zero()) return;
        auto it = terms_.find(c);
        if (it == terms_.end()) {
            terms_.emplace(c, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    SkeinElement& operator+=(const SkeinElement& o) {
        for (const auto& [c, w] : o.terms_) add_term(c, w);
        return *this;
    }
    friend SkeinElement operator+(SkeinElement a, const SkeinElement& b) { return a += b; }
    friend SkeinElement operator*(const OmegaLaurent& s, const SkeinElement& x) {
        SkeinElement r;
        for (const auto& [c, w] : x.terms_) r.add_term(c, s * w);
        return r;
    }
    bool operator==(const SkeinElement& o) const { return terms_ == o.terms_; }

    /// The dagger antiautomorphism: reverses crossings (identity on the
    /// simple basis) and inverts w.
    SkeinElement dagger() const {
        SkeinElement r;
        for (const auto& [c, w] : terms_) r.terms_.emplace(c, w.bar());
        return r;
    }

private:
    std::map<Multicurve, OmegaLaurent> terms_;
};

/// The simple multicurve T^v with v_i parallel copies of edge i.
inline SkeinElement monomial_class(const Triangulation& T, const std::map<Chord, int>& v) {
    Multicurve c;
    for (const auto& [chord, mult] : v) {
        if (mult < 0) throw std::invalid_argument("monomial_class: negative multiplicity");
        if (!T.has_edge(chord)) throw std::invalid_argument("monomial_class: not an edge of T");
        if (mult > 0) c.emplace(chord, mult);
    }
    return SkeinElement::basis(std::move(c));
}

namespace skein_detail {

struct Pt {
    long long x, y;
};

inline __int128 cross(long long ax, long long ay, long long bx, long long by) {
    return static_cast<__int128>(ax) * by - static_cast<__int128>(ay) * bx;
}

/// Convex integer positions for the marked points, counterclockwise.
inline std::vector<Pt> vertex_positions(int n) {
    std::vector<Pt> p(n);
    const double scale = 1 << 20;
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * M_PI * k / n;
        p[k].x = static_cast<long long>(std::llround(scale * std::cos(th)));
        p[k].y = static_cast<long long>(std::llround(scale * std::sin(th)));
    }
    return p;
}

struct Strand {
    Chord chord;
    bool in_over;  // true for the over (left factor) multicurve
    int offset;    // nesting index among parallel copies of the same chord
};

struct Crossing {
    int os, us;           // over-strand and under-strand indices
    int pos_over = -1;    // slot along the over strand (filled after sorting)
    int pos_under = -1;   // slot along the under strand
    bool chi_pos;         // cross(u_over, u_under) > 0
};

}  // namespace skein_detail

/// Superposition product of two simple multicurves, with every strand of K
/// crossing over every strand of L.  Resolves all crossings, evaluates
/// loops, kills returning arcs, and renormalizes marked-point orderings.
inline SkeinElement superpose(const MarkedDisk& disk, const Multicurve& K, const Multicurve& L);

/// Bilinear extension of superpose.
inline SkeinElement skein_mul(const MarkedDisk& disk, const SkeinElement& x,
                              const SkeinElement& y) {
    SkeinElement r;
    for (const auto& [ck, wk] : x.terms())
        for (const auto& [cl, wl] : y.terms()) r += (wk * wl) * superpose(disk, ck, cl);
    return r;
}

inline SkeinElement superpose(const MarkedDisk& disk, const Multicurve& K, const Multicurve& L) {
    using namespace skein_detail;
    if (!multicurve_is_simple(K) || !multicurve_is_simple(L))
        throw std::invalid_argument("superpose: inputs must be simple");

    // Strand lists; parallel copies of one chord are nested with the
    // over-strands innermost.
    std::vector<Strand> strands;
    std::map<Chord, int> offset_next;
    for (const auto& [c, m] : K)
        for (int i = 0; i < m; ++i) strands.push_back({c, true, ++offset_next[c]});
    for (const auto& [c, m] : L)
        for (int i = 0; i < m; ++i) strands.push_back({c, false, ++offset_next[c]});

    std::vector<Crossing> crossings;
    for (size_t a = 0; a < strands.size(); ++a)
        for (size_t b = 0; b < strands.size(); ++b) {
            if (!strands[a].in_over || strands[b].in_over) continue;
            if (chords_cross(strands[a].chord, strands[b].chord))
                crossings.push_back({static_cast<int>(a), static_cast<int>(b), -1, -1, false});
        }

    const long long conv = -lambda_geo_pairing(disk, K, L);
    const OmegaLaurent global = OmegaLaurent::monomial(static_cast<int>(conv));

    // Large products are split through the algebra structure:
    // [K][L] = w^{-cvt(K1,K2)} [K1] ([K2][L]).
    constexpr size_t kMaxCrossings = 14;
    if (crossings.size() > kMaxCrossings) {
        auto split = [&](const Multicurve& C) {
            int total = 0;
            for (const auto& [c, m] : C) total += m;
            Multicurve c1, c2;
            int take = total / 2;
            for (const auto& [c, m] : C) {
                const int t = std::min(m, take);
                if (t > 0) c1[c] = t;
                if (m - t > 0) c2[c] = m - t;
                take -= t;
            }
            return std::make_pair(c1, c2);
        };
        int ktotal = 0;
        for (const auto& [c, m] : K) ktotal += m;
        if (ktotal > 1) {
            auto [k1, k2] = split(K);
            const long long cvt = -lambda_geo_pairing(disk, k1, k2);
            return OmegaLaurent::monomial(static_cast<int>(-cvt)) *
                   skein_mul(disk, SkeinElement::basis(k1), superpose(disk, k2, L));
        }
        auto [l1, l2] = split(L);
        const long long cvt = -lambda_geo_pairing(disk, l1, l2);
        return OmegaLaurent::monomial(static_cast<int>(-cvt)) *
               skein_mul(disk, superpose(disk, K, l1), SkeinElement::basis(l2));
    }

    if (crossings.empty()) {
        Multicurve u = K;
        for (const auto& [c, m] : L) u[c] += m;
        return global * SkeinElement::basis(u);
    }

    const std::vector<Pt> vt = vertex_positions(disk.n);
    auto dirvec = [&](const Chord& c) {
        return Pt{vt[c.b].x - vt[c.a].x, vt[c.b].y - vt[c.a].y};
    };

    // Order the crossings along each strand.  Along the segment a->b of
    // strand s, the crossing with strand t sits at parameter
    // cross(C-A, D-C) / cross(B-A, D-C); exact comparison, with parallel
    // copies (equal parameters) tie-broken by nesting offset.
    struct SlotRef {
        int crossing;
        int other_strand;
    };
    std::vector<std::vector<SlotRef>> along(strands.size());
    for (size_t ci = 0; ci < crossings.size(); ++ci) {
        along[crossings[ci].os].push_back({static_cast<int>(ci), crossings[ci].us});
        along[crossings[ci].us].push_back({static_cast<int>(ci), crossings[ci].os});
    }
    for (size_t s = 0; s < strands.size(); ++s) {
        const Chord cs = strands[s].chord;
        const Pt A = vt[cs.a], B = vt[cs.b];
        const Pt u{B.x - A.x, B.y - A.y};
        auto param = [&](const Chord& ct) {
            const Pt C = vt[ct.a], D = vt[ct.b];
            const __int128 num = cross(C.x - A.x, C.y - A.y, D.x - C.x, D.y - C.y);
            __int128 den = cross(u.x, u.y, D.x - C.x, D.y - C.y);
            __int128 n2 = num;
            if (den < 0) {
                den = -den;
                n2 = -n2;
            }
            return std::make_pair(n2, den);
        };
        std::sort(along[s].begin(), along[s].end(), [&](const SlotRef& x, const SlotRef& y) {
            const Chord cx = strands[x.other_strand].chord;
            const Chord cy = strands[y.other_strand].chord;
            if (cx != cy) {
                auto [nx, dx] = param(cx);
                auto [ny, dy] = param(cy);
                return nx * dy < ny * dx;
            }
            // Parallel copies: later along s iff offset grows in the
            // direction of travel across the bow normal.
            const Pt w = dirvec(cx);
            const __int128 dot = static_cast<__int128>(u.x) * (-w.y) +
                                 static_cast<__int128>(u.y) * w.x;
            const bool ascending = dot > 0;
            const int ox = strands[x.other_strand].offset;
            const int oy = strands[y.other_strand].offset;
            return ascending ? ox < oy : ox > oy;
        });
        for (size_t t = 0; t < along[s].size(); ++t) {
            Crossing& cr = crossings[along[s][t].crossing];
            if (static_cast<int>(s) == cr.os)
                cr.pos_over = static_cast<int>(t);
            else
                cr.pos_under = static_cast<int>(t);
        }
    }
    for (Crossing& cr : crossings) {
        const Pt uo = dirvec(strands[cr.os].chord);
        const Pt uu = dirvec(strands[cr.us].chord);
        cr.chi_pos = cross(uo.x, uo.y, uu.x, uu.y) > 0;
    }

    // Piece bookkeeping: strand s splits into along[s].size() + 1 pieces.
    // Plug ids: per crossing, 4 plugs (over-, over+, under-, under+).
    std::vector<int> piece_base(strands.size() + 1, 0);
    for (size_t s = 0; s < strands.size(); ++s)
        piece_base[s + 1] = piece_base[s] + static_cast<int>(along[s].size()) + 1;
    const int npieces = piece_base[strands.size()];

    const OmegaLaurent loop_scalar = -(OmegaLaurent::q_power(1) + OmegaLaurent::q_power(-1));
    const OmegaLaurent wplus2 = OmegaLaurent::monomial(2);
    const OmegaLaurent wminus2 = OmegaLaurent::monomial(-2);

    std::vector<int> vertex_of_plug(2 * static_cast<size_t>(npieces), -1);
    for (size_t s = 0; s < strands.size(); ++s) {
        vertex_of_plug[2 * piece_base[s]] = strands[s].chord.a;
        vertex_of_plug[2 * (piece_base[s + 1] - 1) + 1] = strands[s].chord.b;
    }

    SkeinElement out;
    const size_t nstates = size_t(1) << crossings.size();
    // Piece-end adjacency per state.  End ids: 2*p (start of piece p,
    // toward the strand's lower endpoint) and 2*p+1 (end of piece p).
    std::vector<int> join(2 * static_cast<size_t>(npieces));
    for (size_t state = 0; state < nstates; ++state) {
        std::fill(join.begin(), join.end(), -1);
        OmegaLaurent coeff = global;
        for (size_t ci = 0; ci < crossings.size(); ++ci) {
            const Crossing& cr = crossings[ci];
            const bool bit = (state >> ci) & 1;
            coeff *= bit ? wplus2 : wminus2;
            // Plug ends: over-minus is the end of piece pos_over on the over
            // strand, over-plus the start of the next piece; same under.
            const int om = 2 * (piece_base[cr.os] + cr.pos_over) + 1;
            const int op = 2 * (piece_base[cr.os] + cr.pos_over + 1);
            const int um = 2 * (piece_base[cr.us] + cr.pos_under) + 1;
            const int up = 2 * (piece_base[cr.us] + cr.pos_under + 1);
            // bit=1: the w^{+2} smoothing joins each over-ray to the
            // counterclockwise-adjacent under-ray.
            int j1a, j1b, j2a, j2b;
            if (bit == cr.chi_pos) {
                j1a = om;
                j1b = um;
                j2a = op;
                j2b = up;
            } else {
                j1a = om;
                j1b = up;
                j2a = op;
                j2b = um;
            }
            join[j1a] = j1b;
            join[j1b] = j1a;
            join[j2a] = j2b;
            join[j2b] = j2a;
        }

        // Trace arcs between boundary plugs (strand starts and ends).
        std::vector<char> visited(npieces, 0);
        Multicurve result;
        bool killed = false;
        for (size_t s = 0; s < strands.size() && !killed; ++s) {
            for (int side = 0; side < 2 && !killed; ++side) {
                const int plug0 = side == 0 ? 2 * piece_base[s]
                                            : 2 * (piece_base[s + 1] - 1) + 1;
                if (visited[plug0 / 2]) continue;
                const int vstart = side == 0 ? strands[s].chord.a : strands[s].chord.b;
                int enter = plug0;
                while (true) {
                    const int piece = enter / 2;
                    visited[piece] = 1;
                    const int other = enter ^ 1;
                    const int linked = join[other];
                    if (linked < 0) {
                        // The exit plug is a strand start (even id at the
                        // strand's first piece) or a strand end.
                        const int vend = vertex_of_plug[other];
                        if (vend == vstart)
                            killed = true;
                        else
                            result[Chord(vstart, vend)] += 1;
                        break;
                    }
                    enter = linked;
                }
            }
        }
        if (killed) continue;
        // Remaining unvisited pieces close up into loops.
        int loops = 0;
        for (int p = 0; p < npieces; ++p) {
            if (visited[p]) continue;
            ++loops;
            int piece = p;
            int enter = 2 * piece;
            while (!visited[piece]) {
                visited[piece] = 1;
                const int linked = join[enter ^ 1];
                piece = linked / 2;
                enter = linked;
            }
        }
        for (int i = 0; i < loops; ++i) coeff *= loop_scalar;
        out.add_term(result, coeff);
    }
    return out;
}

/// Chart expansion of a skein element: every chord class is replaced by its
/// cluster expansion, multiplied with the frame phase conventions.
inline TorusElement to_chart(const SkeinElement& x, ClusterCache& cache) {
    TorusElement r = TorusElement::zero(cache.base_form());
    for (const auto& [curve, coeff] : x.terms()) {
        std::vector<Chord> chords;
        for (const auto& [c, m] : curve) chords.push_back(c);
        const Triangulation tc = canonical_completion(cache.chart().disk(), chords);
        r += coeff * cache.expand_frame_monomial(tc, curve);
    }
    return r;
}

}  // namespace qdisk
