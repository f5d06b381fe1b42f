/**
 * @file lamination.hpp
 * @brief Tropical points of the two moduli spaces attached to the disk:
 *        integer-weighted curve systems with vertex-sum constraints, their
 *        validation and enumeration, and the doubling embedding phi.
 */
#pragma once

#include "qdisk/polygon.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qdisk {

/// Weighted chord system on the disk S: diagonals carry positive weights,
/// boundary edges any integers, and the total weight at each vertex is zero.
struct ALamination {
    MarkedDisk disk;
    std::map<Chord, int> weights;  // zero weights are not stored

    bool operator==(const ALamination& o) const {
        return disk == o.disk && weights == o.weights;
    }
    bool operator<(const ALamination& o) const {
        if (disk.n != o.disk.n) return disk.n < o.disk.n;
        return weights < o.weights;
    }
};

/// Positive curve systems on S (front) and its reversal (back) with equal
/// vertex totals and no boundary edge on both sides.
struct DLamination {
    MarkedDisk disk;
    std::map<Chord, int> front;
    std::map<Chord, int> back;

    bool operator==(const DLamination& o) const {
        return disk == o.disk && front == o.front && back == o.back;
    }
    bool operator<(const DLamination& o) const {
        if (disk.n != o.disk.n) return disk.n < o.disk.n;
        if (front != o.front) return front < o.front;
        return back < o.back;
    }
};

struct ValidationReport {
    bool ok = true;
    std::string violation;  // first violation found

    static ValidationReport pass() { return {}; }
    static ValidationReport fail(std::string what) { return {false, std::move(what)}; }
};

inline std::vector<long long> vertex_totals(const MarkedDisk& disk,
                                            const std::map<Chord, int>& weights) {
    std::vector<long long> t(disk.n, 0);
    for (const auto& [c, w] : weights) {
        t[c.a] += w;
        t[c.b] += w;
    }
    return t;
}

inline ValidationReport validate(const ALamination& l) {
    std::vector<Chord> diags;
    for (const auto& [c, w] : l.weights) {
        if (c.b >= l.disk.n) return ValidationReport::fail("chord outside the disk");
        if (w == 0) return ValidationReport::fail("stored zero weight");
        if (!is_boundary(l.disk, c)) {
            if (w < 0) return ValidationReport::fail("diagonal positivity: " + c.label());
            diags.push_back(c);
        }
    }
    for (size_t i = 0; i < diags.size(); ++i)
        for (size_t j = i + 1; j < diags.size(); ++j)
            if (chords_cross(diags[i], diags[j]))
                return ValidationReport::fail("crossing diagonals: " + diags[i].label() + " " +
                                              diags[j].label());
    const auto totals = vertex_totals(l.disk, l.weights);
    for (int v = 0; v < l.disk.n; ++v)
        if (totals[v] != 0)
            return ValidationReport::fail("vertex sum nonzero at " + std::to_string(v));
    return ValidationReport::pass();
}

inline ValidationReport validate(const DLamination& l) {
    for (const auto* side : {&l.front, &l.back}) {
        std::vector<Chord> diags;
        for (const auto& [c, w] : *side) {
            if (c.b >= l.disk.n) return ValidationReport::fail("chord outside the disk");
            if (w <= 0) return ValidationReport::fail("weight positivity: " + c.label());
            if (!is_boundary(l.disk, c)) diags.push_back(c);
        }
        for (size_t i = 0; i < diags.size(); ++i)
            for (size_t j = i + 1; j < diags.size(); ++j)
                if (chords_cross(diags[i], diags[j]))
                    return ValidationReport::fail("crossing diagonals: " + diags[i].label() +
                                                  " " + diags[j].label());
    }
    for (const auto& [c, w] : l.front)
        if (is_boundary(l.disk, c) && l.back.contains(c))
            return ValidationReport::fail("boundary edge on both sides: " + c.label());
    const auto tf = vertex_totals(l.disk, l.front);
    const auto tb = vertex_totals(l.disk, l.back);
    for (int v = 0; v < l.disk.n; ++v)
        if (tf[v] != tb[v])
            return ValidationReport::fail("front/back vertex totals differ at " +
                                          std::to_string(v));
    return ValidationReport::pass();
}

/// The embedding of A-laminations into D-laminations: positive-weight curves
/// are drawn on the reversed disk, negative boundary weights stay on the
/// front with absolute values.
inline DLamination phi(const ALamination& l) {
    ValidationReport r = validate(l);
    if (!r.ok) throw std::invalid_argument("phi: invalid lamination: " + r.violation);
    DLamination d{l.disk, {}, {}};
    for (const auto& [c, w] : l.weights) {
        if (w > 0) {
            d.back[c] = w;
        } else if (w < 0) {
            if (!is_boundary(l.disk, c)) throw std::logic_error("phi: negative diagonal");
            d.front[c] = -w;
        }
    }
    return d;
}

/// All valid A-laminations with diagonal weights bounded by `weight_bound`.
/// The boundary weights solve the vertex equations; for even n the solution
/// line is sampled within the smallest sup-norm window plus `slack`.
inline std::vector<ALamination> enumerate_alaminations(const MarkedDisk& disk, int weight_bound,
                                                       int slack = 0, int max_n = 12) {
    if (disk.n > max_n) throw std::invalid_argument("enumerate_alaminations: bound exceeded");
    std::vector<Chord> all_diags;
    for (int a = 0; a < disk.n; ++a)
        for (int b = a + 2; b < disk.n; ++b)
            if (!(a == 0 && b == disk.n - 1)) all_diags.emplace_back(a, b);

    // Noncrossing diagonal subsets with weights in 1..weight_bound.
    std::vector<std::map<Chord, int>> configs{{}};
    std::vector<std::map<Chord, int>> complete;
    for (const Chord& d : all_diags) {
        std::vector<std::map<Chord, int>> next;
        for (const auto& cfg : configs) {
            bool ok = true;
            for (const auto& [c, w] : cfg)
                if (chords_cross(c, d)) {
                    ok = false;
                    break;
                }
            next.push_back(cfg);
            if (!ok) continue;
            for (int w = 1; w <= weight_bound; ++w) {
                auto cfg2 = cfg;
                cfg2[d] = w;
                next.push_back(std::move(cfg2));
            }
        }
        configs = std::move(next);
    }
    complete = std::move(configs);

    std::vector<ALamination> out;
    const int n = disk.n;
    for (const auto& cfg : complete) {
        // Solve x_{v-1} + x_v = -d_v for the boundary weights
        // (x_v = weight of edge (v, v+1)).
        std::vector<long long> dv(n, 0);
        for (const auto& [c, w] : cfg) {
            dv[c.a] += w;
            dv[c.b] += w;
        }
        // x_v = c_{v} - x_{v-1} unrolled from x_0 = t:
        // x_v = alt_v - (-1)^v t with alt_v = sum of alternating c's.
        // Constraint from closing the cycle:
        //   x_{n-1} + x_0 = c_0.
        std::vector<long long> alt(n, 0);
        // alt_0 corresponds to x_0 = t => alt[0] = 0, sign[0] = +1.
        std::vector<int> sign(n, 1);
        for (int v = 1; v < n; ++v) {
            alt[v] = -dv[v] - alt[v - 1];
            sign[v] = -sign[v - 1];
        }
        auto emit = [&](long long t) {
            ALamination l{disk, cfg};
            for (int v = 0; v < n; ++v) {
                const long long x = alt[v] + sign[v] * t;
                if (x != 0) l.weights[Chord(v, (v + 1) % n)] = static_cast<int>(x);
            }
            if (validate(l).ok) out.push_back(std::move(l));
        };
        if (n % 2 == 1) {
            // Closure x_{n-1} + x_0 = -dv[0] with sign[n-1] = +1 forces
            // 2t = -dv[0] - alt[n-1]; a unique solution when integral.
            const long long rhs = -dv[0] - alt[n - 1];
            if (rhs % 2 != 0) continue;
            emit(rhs / 2);
        } else {
            // sign[n-1] = -1: closure reads alt[n-1] = -dv[0] and t is free.
            // Keep the solutions within the smallest sup-norm window
            // (widened by `slack`), which bounds the enumeration without
            // excluding anything below the diagonal bound.
            if (alt[n - 1] != -dv[0]) continue;
            const long long window = 4LL * (weight_bound + 1) * n;
            auto sup_of = [&](long long t) {
                long long sup = 0;
                for (int v = 0; v < n; ++v)
                    sup = std::max(sup, std::abs(alt[v] + sign[v] * t));
                return sup;
            };
            long long best = -1;
            for (long long t = -window; t <= window; ++t) {
                const long long sup = sup_of(t);
                if (best < 0 || sup < best) best = sup;
            }
            for (long long t = -window; t <= window; ++t)
                if (sup_of(t) <= best + slack) emit(t);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Deterministic pool of valid D-laminations with per-side diagonal weights
/// bounded by `weight_bound`, built by pairing positive curve systems with
/// matching vertex totals.
inline std::vector<DLamination> enumerate_dlaminations(const MarkedDisk& disk, int weight_bound,
                                                       size_t limit) {
    // Positive systems: noncrossing diagonals weighted 1..bound, boundary
    // edges weighted 0..bound.
    std::vector<std::map<Chord, int>> systems{{}};
    std::vector<Chord> all;
    for (int a = 0; a < disk.n; ++a)
        for (int b = a + 2; b < disk.n; ++b)
            if (!(a == 0 && b == disk.n - 1)) all.emplace_back(a, b);
    for (const Chord& d : all) {
        std::vector<std::map<Chord, int>> next;
        for (const auto& cfg : systems) {
            bool ok = true;
            for (const auto& [c, w] : cfg)
                if (chords_cross(c, d)) {
                    ok = false;
                    break;
                }
            next.push_back(cfg);
            if (!ok) continue;
            for (int w = 1; w <= weight_bound; ++w) {
                auto cfg2 = cfg;
                cfg2[d] = w;
                next.push_back(std::move(cfg2));
            }
        }
        systems = std::move(next);
    }
    for (const Chord& b : Triangulation::boundary_edges(disk)) {
        std::vector<std::map<Chord, int>> next;
        for (const auto& cfg : systems) {
            next.push_back(cfg);
            for (int w = 1; w <= weight_bound; ++w) {
                auto cfg2 = cfg;
                cfg2[b] = w;
                next.push_back(std::move(cfg2));
            }
        }
        systems = std::move(next);
        if (systems.size() > 40000) break;  // plenty for sampling purposes
    }

    std::map<std::vector<long long>, std::vector<const std::map<Chord, int>*>> by_totals;
    for (const auto& s : systems) by_totals[vertex_totals(disk, s)].push_back(&s);

    std::vector<DLamination> out;
    for (const auto& [totals, bucket] : by_totals) {
        for (const auto* f : bucket) {
            for (const auto* b : bucket) {
                DLamination d{disk, *f, *b};
                if (validate(d).ok) {
                    out.push_back(std::move(d));
                    if (out.size() >= limit) return out;
                }
            }
        }
    }
    return out;
}

}  // namespace qdisk
