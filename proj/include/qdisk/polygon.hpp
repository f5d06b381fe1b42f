/**
 * @file polygon.hpp
 * @brief The marked disk: chords, ideal triangulations, flips, and the
 *        exchange matrices attached to a triangulation.
 *
 * Orientation convention (fixed globally, pinned by the test suite): the
 * marked points are labeled 0..n-1 counterclockwise.  At a vertex v the
 * incident edges are fanned by d_v(u) = (u - v) mod n; smaller d_v means
 * "more clockwise".  "i immediately clockwise to j" requires i, j adjacent
 * in the fan of the triangulation at the shared vertex.
 */
#pragma once

#include "qdisk/linalg.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdisk {

struct MarkedDisk {
    int n;  // number of boundary marked points, n >= 3

    explicit MarkedDisk(int n_) : n(n_) {
        if (n < 3) throw std::invalid_argument("MarkedDisk: need at least three marked points");
    }
    bool operator==(const MarkedDisk&) const = default;
};

struct Chord {
    int a, b;  // endpoints, normalized to a < b

    Chord(int x, int y) : a(std::min(x, y)), b(std::max(x, y)) {
        if (a == b) throw std::invalid_argument("Chord: endpoints must be distinct");
    }
    auto operator<=>(const Chord&) const = default;

    std::string label() const { return std::to_string(a) + "-" + std::to_string(b); }
};

inline bool is_boundary(const MarkedDisk& disk, const Chord& c) {
    return c.b - c.a == 1 || (c.a == 0 && c.b == disk.n - 1);
}

/// Two chords cross iff their endpoints strictly interleave cyclically.
inline bool chords_cross(const Chord& x, const Chord& y) {
    if (x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b) return false;
    const bool c_in = x.a < y.a && y.a < x.b;
    const bool d_in = x.a < y.b && y.b < x.b;
    return c_in != d_in;
}

class Triangulation {
public:
    Triangulation(MarkedDisk disk, std::vector<Chord> diagonals)
        : disk_(disk), diagonals_(std::move(diagonals)) {
        std::sort(diagonals_.begin(), diagonals_.end());
        validate();
        edges_ = boundary_edges(disk_);
        edges_.insert(edges_.end(), diagonals_.begin(), diagonals_.end());
        std::sort(edges_.begin(), edges_.end());
    }

    static std::vector<Chord> boundary_edges(const MarkedDisk& disk) {
        std::vector<Chord> bd;
        for (int v = 0; v < disk.n; ++v) bd.emplace_back(v, (v + 1) % disk.n);
        std::sort(bd.begin(), bd.end());
        return bd;
    }

    const MarkedDisk& disk() const { return disk_; }
    int n() const { return disk_.n; }
    const std::vector<Chord>& diagonals() const { return diagonals_; }

    /// Edge index I: boundary edges and diagonals in lexicographic order.
    const std::vector<Chord>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    int edge_index(const Chord& c) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), c);
        if (it == edges_.end() || *it != c) throw std::invalid_argument("edge_index: not an edge");
        return static_cast<int>(it - edges_.begin());
    }
    bool has_edge(const Chord& c) const {
        return std::binary_search(edges_.begin(), edges_.end(), c);
    }
    bool is_internal(const Chord& c) const { return !is_boundary(disk_, c) && has_edge(c); }

    /// Positions (in the edge index) of the internal edges J.
    std::vector<int> internal_indices() const {
        std::vector<int> js;
        for (int i = 0; i < edge_count(); ++i)
            if (!is_boundary(disk_, edges_[i])) js.push_back(i);
        return js;
    }

    bool operator==(const Triangulation& o) const {
        return disk_ == o.disk_ && diagonals_ == o.diagonals_;
    }
    bool operator<(const Triangulation& o) const { return diagonals_ < o.diagonals_; }

private:
    void validate() const {
        const int want = disk_.n - 3;
        if (static_cast<int>(diagonals_.size()) != want)
            throw std::invalid_argument("Triangulation: expected " + std::to_string(want) +
                                        " diagonals");
        for (size_t i = 0; i < diagonals_.size(); ++i) {
            const Chord& c = diagonals_[i];
            if (c.a < 0 || c.b >= disk_.n) throw std::invalid_argument("Triangulation: bad vertex");
            if (is_boundary(disk_, c))
                throw std::invalid_argument("Triangulation: boundary edge listed as diagonal");
            if (i > 0 && diagonals_[i] == diagonals_[i - 1])
                throw std::invalid_argument("Triangulation: repeated diagonal");
            for (size_t j = i + 1; j < diagonals_.size(); ++j)
                if (chords_cross(c, diagonals_[j]))
                    throw std::invalid_argument("Triangulation: crossing diagonals");
        }
    }

    MarkedDisk disk_;
    std::vector<Chord> diagonals_;
    std::vector<Chord> edges_;
};

/// Counterclockwise fan distance of edge (v,u) at vertex v.
inline int fan_distance(const MarkedDisk& disk, int v, int u) {
    return ((u - v) % disk.n + disk.n) % disk.n;
}

/// Edges of T incident to v, ordered by increasing fan distance
/// (clockwise-most first).
inline std::vector<Chord> vertex_fan(const Triangulation& T, int v) {
    std::vector<Chord> fan;
    for (const Chord& e : T.edges())
        if (e.a == v || e.b == v) fan.push_back(e);
    std::sort(fan.begin(), fan.end(), [&](const Chord& x, const Chord& y) {
        int ux = x.a == v ? x.b : x.a;
        int uy = y.a == v ? y.b : y.a;
        return fan_distance(T.disk(), v, ux) < fan_distance(T.disk(), v, uy);
    });
    return fan;
}

struct ExchangeData {
    IntMat epsilon;  // I x I, skew
    IntMat b;        // I x J
    IntMat lambda;   // I x I, skew
};

/// The matrices attached to a triangulation under the fixed orientation
/// convention.  Compatibility sum_k b_{kj} lambda_{ki} = 4 delta_{ij} is
/// asserted before returning.
inline ExchangeData exchange_data(const Triangulation& T) {
    const int m = T.edge_count();
    const std::vector<int> J = T.internal_indices();
    ExchangeData ex;
    ex.epsilon = IntMat(m, m);
    ex.lambda = IntMat(m, m);
    for (int v = 0; v < T.n(); ++v) {
        const std::vector<Chord> fan = vertex_fan(T, v);
        const int f = static_cast<int>(fan.size());
        for (int s = 0; s < f; ++s) {
            const int is = T.edge_index(fan[s]);
            for (int t = s + 1; t < f; ++t) {
                const int it = T.edge_index(fan[t]);
                // fan[s] is clockwise to fan[t].
                ex.lambda.at(is, it) += 1;
                ex.lambda.at(it, is) -= 1;
                if (t == s + 1) {
                    // Adjacent in the fan: immediately clockwise.
                    ex.epsilon.at(is, it) -= 1;
                    ex.epsilon.at(it, is) += 1;
                }
            }
        }
    }
    ex.b = IntMat(m, static_cast<int>(J.size()));
    for (int i = 0; i < m; ++i)
        for (size_t jj = 0; jj < J.size(); ++jj) ex.b.at(i, static_cast<int>(jj)) = -ex.epsilon.at(i, J[jj]);

    // Muller compatibility: B^t Lambda = (4 Id | 0).
    for (size_t jj = 0; jj < J.size(); ++jj)
        for (int i = 0; i < m; ++i) {
            long long s = 0;
            for (int k = 0; k < m; ++k) s += ex.b.at(k, static_cast<int>(jj)) * ex.lambda.at(k, i);
            const long long want = (i == J[jj]) ? 4 : 0;
            if (s != want) throw std::logic_error("exchange_data: compatibility failure");
        }
    return ex;
}

struct FlipResult {
    Triangulation tri;
    Chord removed;
    Chord added;
};

/// Flip the internal edge k: replace it by the opposite diagonal of its
/// quadrilateral.  Edges other than k are identified by their endpoints.
inline FlipResult flip(const Triangulation& T, const Chord& k) {
    if (!T.has_edge(k) || is_boundary(T.disk(), k))
        throw std::invalid_argument("flip: not an internal edge");
    // The two triangle apexes are the fan neighbors of k at either endpoint.
    const std::vector<Chord> fan = vertex_fan(T, k.a);
    const auto it = std::find(fan.begin(), fan.end(), k);
    const size_t pos = static_cast<size_t>(it - fan.begin());
    if (pos == 0 || pos + 1 == fan.size()) throw std::logic_error("flip: missing quadrilateral");
    auto far_end = [&](const Chord& c) { return c.a == k.a ? c.b : c.a; };
    const Chord added(far_end(fan[pos - 1]), far_end(fan[pos + 1]));
    std::vector<Chord> diags;
    for (const Chord& d : T.diagonals())
        if (d != k) diags.push_back(d);
    diags.push_back(added);
    return FlipResult{Triangulation(T.disk(), std::move(diags)), k, added};
}

/// Matrix mutation in direction k (applies to the full skew matrix).
inline IntMat mutate_matrix(const IntMat& eps, int k) {
    if (k < 0 || k >= eps.rows) throw std::invalid_argument("mutate_matrix: bad index");
    IntMat r(eps.rows, eps.cols);
    for (int i = 0; i < eps.rows; ++i)
        for (int j = 0; j < eps.cols; ++j) {
            if (i == k || j == k) {
                r.at(i, j) = -eps.at(i, j);
            } else {
                const long long ik = eps.at(i, k), kj = eps.at(k, j);
                r.at(i, j) = eps.at(i, j) + (std::abs(ik) * kj + ik * std::abs(kj)) / 2;
            }
        }
    return r;
}

/// All triangulations of the disk (count = Catalan(n-2)); deterministic order.
inline std::vector<Triangulation> enumerate_triangulations(const MarkedDisk& disk,
                                                           int max_n = 12) {
    if (disk.n > max_n) throw std::invalid_argument("enumerate_triangulations: bound exceeded");
    std::vector<Chord> all;
    for (int a = 0; a < disk.n; ++a)
        for (int b = a + 2; b < disk.n; ++b)
            if (!(a == 0 && b == disk.n - 1)) all.emplace_back(a, b);
    std::vector<Triangulation> out;
    std::vector<Chord> cur;
    const int want = disk.n - 3;
    auto rec = [&](auto&& self, size_t from) -> void {
        if (static_cast<int>(cur.size()) == want) {
            out.emplace_back(disk, cur);
            return;
        }
        for (size_t i = from; i < all.size(); ++i) {
            bool ok = true;
            for (const Chord& c : cur)
                if (chords_cross(c, all[i])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(all[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// Lexicographically-least triangulation whose edges include the given
/// pairwise-noncrossing chords.
inline Triangulation canonical_completion(const MarkedDisk& disk, const std::vector<Chord>& chords) {
    std::vector<Chord> cur;
    for (const Chord& c : chords) {
        if (is_boundary(disk, c)) continue;
        for (const Chord& d : cur)
            if (chords_cross(c, d)) throw std::invalid_argument("canonical_completion: crossing input");
        if (std::find(cur.begin(), cur.end(), c) == cur.end()) cur.push_back(c);
    }
    for (int a = 0; a < disk.n && static_cast<int>(cur.size()) < disk.n - 3; ++a)
        for (int b = a + 2; b < disk.n; ++b) {
            if (a == 0 && b == disk.n - 1) continue;
            const Chord c(a, b);
            if (std::find(cur.begin(), cur.end(), c) != cur.end()) continue;
            bool ok = true;
            for (const Chord& d : cur)
                if (chords_cross(c, d)) {
                    ok = false;
                    break;
                }
            if (ok) {
                cur.push_back(c);
                if (static_cast<int>(cur.size()) == disk.n - 3) break;
            }
        }
    return Triangulation(disk, cur);
}

/// Shortest flip sequence from T1 to T2 (breadth-first search).  Each entry
/// is the diagonal flipped in the triangulation reached so far.
inline std::vector<Chord> flip_path(const Triangulation& T1, const Triangulation& T2) {
    if (T1.disk() != T2.disk()) throw std::invalid_argument("flip_path: different disks");
    if (T1 == T2) return {};
    std::map<std::vector<Chord>, std::pair<std::vector<Chord>, Chord>> parent;
    std::queue<Triangulation> queue;
    queue.push(T1);
    parent.emplace(T1.diagonals(), std::pair<std::vector<Chord>, Chord>{T1.diagonals(), Chord(0, 1)});
    while (!queue.empty()) {
        Triangulation cur = queue.front();
        queue.pop();
        for (const Chord& d : cur.diagonals()) {
            FlipResult fr = flip(cur, d);
            if (parent.contains(fr.tri.diagonals())) continue;
            parent.emplace(fr.tri.diagonals(), std::pair<std::vector<Chord>, Chord>{cur.diagonals(), d});
            if (fr.tri == T2) {
                std::vector<Chord> path;
                std::vector<Chord> at = fr.tri.diagonals();
                while (at != T1.diagonals()) {
                    auto& [prev, flipped] = parent.at(at);
                    path.push_back(flipped);
                    at = prev;
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push(fr.tri);
        }
    }
    throw std::logic_error("flip_path: targets not connected");
}

}  // namespace qdisk
