#pragma once

// Planar Bowyer-Watson triangulation with segment recovery by flips, and a
// size-field driven mesher for polygonal regions.

#include "core.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

namespace hplateau {

struct PlanarMesh {
    std::vector<Point2> points;
    std::vector<Tri> triangles;
};

inline double orient2d(const Point2& a, const Point2& b, const Point2& c) {
    return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

/// > 0 when d lies inside the circumcircle of the ccw triangle abc.
inline double incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const double adx = a.x() - d.x(), ady = a.y() - d.y();
    const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
    const double cdx = c.x() - d.x(), cdy = c.y() - d.y();
    const double ad = adx * adx + ady * ady, bd = bdx * bdx + bdy * bdy, cd = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

class Delaunay2 {
public:
    struct Face {
        std::array<int, 3> v;   // ccw
        std::array<int, 3> nb;  // nb[k] is across the edge opposite v[k]
        bool alive = true;
    };

    explicit Delaunay2(const std::vector<Point2>& pts) : pts_(pts) {
        Eigen::AlignedBox2d box;
        for (const auto& p : pts_) box.extend(p);
        const Point2 c = box.center();
        const double s = std::max(box.diagonal().norm(), 1e-12) * 1e4;
        n_ = static_cast<int>(pts_.size());
        pts_.push_back(c + Point2(-s, -s));
        pts_.push_back(c + Point2(s, -s));
        pts_.push_back(c + Point2(0.0, s));
        faces_.push_back({{n_, n_ + 1, n_ + 2}, {-1, -1, -1}, true});
        for (int i = 0; i < n_; ++i) insert(i);
    }

    /// Forces the segment (a, b) into the triangulation. Returns false when
    /// flipping could not recover it.
    bool recover_segment(int a, int b) {
        for (int round = 0; round < 2000; ++round) {
            if (has_edge(a, b)) return true;
            bool flipped = false;
            for (int f = 0; f < static_cast<int>(faces_.size()) && !flipped; ++f) {
                if (!faces_[f].alive) continue;
                for (int k = 0; k < 3; ++k) {
                    const int p = faces_[f].v[(k + 1) % 3], q = faces_[f].v[(k + 2) % 3];
                    if (p == a || p == b || q == a || q == b) continue;
                    if (!segments_cross(a, b, p, q)) continue;
                    const int g = faces_[f].nb[k];
                    if (g < 0 || locked(p, q)) continue;
                    if (flip(f, k)) { flipped = true; break; }
                }
            }
            if (!flipped) return has_edge(a, b);
        }
        return has_edge(a, b);
    }

    void lock(int a, int b) { locked_.insert(key(a, b)); }

    /// Lawson flips of unlocked edges until every edge is locally Delaunay.
    void make_delaunay() {
        for (int sweep = 0; sweep < 50; ++sweep) {
            bool any = false;
            for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
                if (!faces_[f].alive) continue;
                for (int k = 0; k < 3; ++k) {
                    const int g = faces_[f].nb[k];
                    if (g < 0) continue;
                    const int p = faces_[f].v[(k + 1) % 3], q = faces_[f].v[(k + 2) % 3];
                    if (locked(p, q)) continue;
                    const int w = opposite(g, p, q);
                    const auto& F = faces_[f].v;
                    if (incircle(pts_[F[0]], pts_[F[1]], pts_[F[2]], pts_[w]) > 0.0 && flip(f, k)) {
                        any = true;
                        break;
                    }
                }
            }
            if (!any) return;
        }
    }

    /// Triangles not touching the auxiliary super-triangle.
    std::vector<Tri> triangles() const {
        std::vector<Tri> out;
        for (const Face& f : faces_) {
            if (!f.alive) continue;
            if (f.v[0] >= n_ || f.v[1] >= n_ || f.v[2] >= n_) continue;
            out.push_back({f.v[0], f.v[1], f.v[2]});
        }
        return out;
    }

    bool has_edge(int a, int b) const {
        for (const Face& f : faces_) {
            if (!f.alive) continue;
            for (int k = 0; k < 3; ++k)
                if ((f.v[k] == a && f.v[(k + 1) % 3] == b) || (f.v[k] == b && f.v[(k + 1) % 3] == a))
                    return true;
        }
        return false;
    }

private:
    static std::uint64_t key(int a, int b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    }
    bool locked(int a, int b) const { return locked_.count(key(a, b)) > 0; }

    int opposite(int g, int p, int q) const {
        for (int v : faces_[g].v)
            if (v != p && v != q) return v;
        return -1;
    }

    bool segments_cross(int a, int b, int p, int q) const {
        const double d1 = orient2d(pts_[a], pts_[b], pts_[p]);
        const double d2 = orient2d(pts_[a], pts_[b], pts_[q]);
        const double d3 = orient2d(pts_[p], pts_[q], pts_[a]);
        const double d4 = orient2d(pts_[p], pts_[q], pts_[b]);
        return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
    }

    void relink(int g, int old_face, int new_face) {
        if (g < 0) return;
        for (int& x : faces_[g].nb)
            if (x == old_face) x = new_face;
    }

    int locate(const Point2& p) const {
        int f = last_;
        if (f < 0 || f >= static_cast<int>(faces_.size()) || !faces_[f].alive) f = -1;
        if (f < 0)
            for (int i = static_cast<int>(faces_.size()) - 1; i >= 0; --i)
                if (faces_[i].alive) { f = i; break; }
        for (int steps = 0; steps < 4 * static_cast<int>(faces_.size()) + 16; ++steps) {
            const Face& F = faces_[f];
            int next = -1;
            for (int k = 0; k < 3; ++k) {
                if (orient2d(pts_[F.v[(k + 1) % 3]], pts_[F.v[(k + 2) % 3]], p) < 0.0) {
                    next = F.nb[k];
                    break;
                }
            }
            if (next < 0) return f;
            f = next;
        }
        for (int i = 0; i < static_cast<int>(faces_.size()); ++i) {
            const Face& F = faces_[i];
            if (!F.alive) continue;
            bool inside = true;
            for (int k = 0; k < 3 && inside; ++k)
                inside = orient2d(pts_[F.v[(k + 1) % 3]], pts_[F.v[(k + 2) % 3]], p) >= 0.0;
            if (inside) return i;
        }
        throw Error("Delaunay2: point location failed");
    }

    void insert(int pi) {
        const Point2& p = pts_[pi];
        const int start = locate(p);
        std::vector<int> bad{start};
        std::set<int> in_bad{start};
        for (size_t i = 0; i < bad.size(); ++i) {
            const Face& F = faces_[bad[i]];
            for (int k = 0; k < 3; ++k) {
                const int g = F.nb[k];
                if (g < 0 || in_bad.count(g)) continue;
                const auto& G = faces_[g].v;
                if (incircle(pts_[G[0]], pts_[G[1]], pts_[G[2]], p) > 0.0) {
                    bad.push_back(g);
                    in_bad.insert(g);
                }
            }
        }
        struct Rim { int a, b, outside; };
        std::vector<Rim> rim;
        for (int f : bad) {
            const Face& F = faces_[f];
            for (int k = 0; k < 3; ++k) {
                const int g = F.nb[k];
                if (g >= 0 && in_bad.count(g)) continue;
                rim.push_back({F.v[(k + 1) % 3], F.v[(k + 2) % 3], g});
            }
        }
        std::vector<int> slots = bad;
        while (slots.size() < rim.size()) {
            slots.push_back(static_cast<int>(faces_.size()));
            faces_.push_back({});
        }
        for (size_t i = rim.size(); i < slots.size(); ++i) faces_[slots[i]].alive = false;
        std::unordered_map<int, int> starts_at, ends_at;
        for (size_t i = 0; i < rim.size(); ++i) {
            const int f = slots[i];
            faces_[f].v = {rim[i].a, rim[i].b, pi};
            faces_[f].nb = {-1, -1, rim[i].outside};
            faces_[f].alive = true;
            starts_at[rim[i].a] = f;
            ends_at[rim[i].b] = f;
        }
        for (size_t i = 0; i < rim.size(); ++i) {
            const int f = slots[i];
            // edge (b, p) is opposite a; edge (p, a) is opposite b
            faces_[f].nb[0] = starts_at.at(rim[i].b);
            faces_[f].nb[1] = ends_at.at(rim[i].a);
            const int g = rim[i].outside;
            if (g >= 0)
                for (int k = 0; k < 3; ++k) {
                    const int x = faces_[g].nb[k];
                    if (x >= 0 && in_bad.count(x)) {
                        const int p0 = faces_[g].v[(k + 1) % 3], p1 = faces_[g].v[(k + 2) % 3];
                        if (p0 == rim[i].b && p1 == rim[i].a) faces_[g].nb[k] = f;
                    }
                }
        }
        last_ = slots.front();
    }

    /// Flips the edge opposite v[k] of face f when the quad is convex.
    bool flip(int f, int k) {
        const int g = faces_[f].nb[k];
        if (g < 0) return false;
        const int a = faces_[f].v[k], b = faces_[f].v[(k + 1) % 3], c = faces_[f].v[(k + 2) % 3];
        int kg = -1;
        for (int j = 0; j < 3; ++j)
            if (faces_[g].nb[j] == f) kg = j;
        if (kg < 0) return false;
        const int d = faces_[g].v[kg];
        // quad a b d c must be strictly convex
        if (orient2d(pts_[a], pts_[b], pts_[d]) <= 0.0 || orient2d(pts_[a], pts_[d], pts_[c]) <= 0.0)
            return false;
        const int fab = faces_[f].nb[(k + 2) % 3];  // across (a,b)
        const int fca = faces_[f].nb[(k + 1) % 3];  // across (c,a)
        // in g = (d, c, b) ordering with v[kg]=d: edges (c? ) resolve by lookup
        int gbd = -1, gdc = -1;
        for (int j = 0; j < 3; ++j) {
            const int p0 = faces_[g].v[(j + 1) % 3], p1 = faces_[g].v[(j + 2) % 3];
            if ((p0 == b && p1 == d) || (p0 == d && p1 == b)) gbd = faces_[g].nb[j];
            if ((p0 == d && p1 == c) || (p0 == c && p1 == d)) gdc = faces_[g].nb[j];
        }
        // new faces: f = (a, b, d), g = (a, d, c)
        faces_[f].v = {a, b, d};
        faces_[f].nb = {gbd, g, fab};
        faces_[g].v = {a, d, c};
        faces_[g].nb = {gdc, fca, f};
        relink(gbd, g, f);
        relink(fca, f, g);
        return true;
    }

    std::vector<Point2> pts_;
    std::vector<Face> faces_;
    std::set<std::uint64_t> locked_;
    int n_ = 0;
    int last_ = 0;
};

// ---------------------------------------------------------------------------
// Polygon utilities

inline double polygon_signed_area(const std::vector<Point2>& loop) {
    double a = 0.0;
    for (size_t i = 0; i < loop.size(); ++i) {
        const Point2& p = loop[i];
        const Point2& q = loop[(i + 1) % loop.size()];
        a += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * a;
}

/// Even-odd containment over all loops.
inline bool inside_loops(const std::vector<std::vector<Point2>>& loops, const Point2& p) {
    bool in = false;
    for (const auto& loop : loops)
        for (size_t i = 0, j = loop.size() - 1; i < loop.size(); j = i++) {
            const Point2 &a = loop[i], &b = loop[j];
            if ((a.y() > p.y()) != (b.y() > p.y())) {
                const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
                if (p.x() < x) in = !in;
            }
        }
    return in;
}

inline double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const Point2 ab = b - a;
    const double L2 = ab.squaredNorm();
    double t = L2 > 0 ? (p - a).dot(ab) / L2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

/// True when two polylines (closed) share no crossing other than at
/// consecutive edges.
inline bool polyline_is_simple(const std::vector<Point2>& loop) {
    const size_t n = loop.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            const Point2 &a = loop[i], &b = loop[(i + 1) % n], &c = loop[j], &d = loop[(j + 1) % n];
            const double d1 = orient2d(a, b, c), d2 = orient2d(a, b, d);
            const double d3 = orient2d(c, d, a), d4 = orient2d(c, d, b);
            if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
                d4 != 0)
                return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Size-field mesher

struct PlanarMeshOptions {
    double grade = 0.3;        // size growth per unit distance
    double clearance = 0.65;   // interior points keep this multiple of h from the boundary
    int smoothing_passes = 4;
};

namespace detail {

/// Background grid with gradation-limited sizes, filled by Dijkstra from the
/// boundary spacing.
class SizeGrid {
public:
    SizeGrid(const std::vector<std::vector<Point2>>& loops,
             const std::function<double(const Point2&)>& hmax, double grade, int res = 256) {
        for (const auto& l : loops)
            for (const auto& p : l) box_.extend(p);
        const double pad = 0.02 * box_.diagonal().norm();
        box_.extend(box_.min() - Point2(pad, pad));
        box_.extend(box_.max() + Point2(pad, pad));
        nx_ = ny_ = res;
        cx_ = box_.sizes().x() / nx_;
        cy_ = box_.sizes().y() / ny_;
        h_.assign(static_cast<size_t>(nx_) * ny_, 0.0);
        for (int j = 0; j < ny_; ++j)
            for (int i = 0; i < nx_; ++i) h_[idx(i, j)] = hmax(center(i, j));
        for (const auto& l : loops) {
            const size_t n = l.size();
            for (size_t k = 0; k < n; ++k) {
                const double s = 0.5 * ((l[k] - l[(k + 1) % n]).norm() + (l[k] - l[(k + n - 1) % n]).norm());
                auto [i, j] = cell(l[k]);
                h_[idx(i, j)] = std::min(h_[idx(i, j)], s);
            }
        }
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        for (int c = 0; c < static_cast<int>(h_.size()); ++c) pq.push({h_[c], c});
        while (!pq.empty()) {
            auto [hv, c] = pq.top();
            pq.pop();
            if (hv > h_[c]) continue;
            const int i = c % nx_, j = c / nx_;
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    const int a = i + di, b = j + dj;
                    if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= nx_ || b >= ny_) continue;
                    const double cand = hv + grade * std::hypot(di * cx_, dj * cy_);
                    if (cand < h_[idx(a, b)]) {
                        h_[idx(a, b)] = cand;
                        pq.push({cand, idx(a, b)});
                    }
                }
        }
    }

    double operator()(const Point2& p) const {
        auto [i, j] = cell(p);
        return h_[idx(i, j)];
    }
    double min_value() const { return *std::min_element(h_.begin(), h_.end()); }

private:
    int idx(int i, int j) const { return j * nx_ + i; }
    Point2 center(int i, int j) const { return box_.min() + Point2((i + 0.5) * cx_, (j + 0.5) * cy_); }
    std::pair<int, int> cell(const Point2& p) const {
        const int i = std::clamp(static_cast<int>((p.x() - box_.min().x()) / cx_), 0, nx_ - 1);
        const int j = std::clamp(static_cast<int>((p.y() - box_.min().y()) / cy_), 0, ny_ - 1);
        return {i, j};
    }

    Eigen::AlignedBox2d box_;
    int nx_ = 0, ny_ = 0;
    double cx_ = 1, cy_ = 1;
    std::vector<double> h_;
};

/// Uniform bucket grid over boundary segments for clearance queries.
class SegmentGrid {
public:
    explicit SegmentGrid(const std::vector<std::vector<Point2>>& loops, int res = 128) {
        for (const auto& l : loops)
            for (size_t k = 0; k < l.size(); ++k) segs_.push_back({l[k], l[(k + 1) % l.size()]});
        for (const auto& s : segs_) { box_.extend(s[0]); box_.extend(s[1]); }
        n_ = res;
        c_ = std::max(box_.sizes().x(), box_.sizes().y()) / n_ + 1e-300;
        cells_.resize(static_cast<size_t>(n_) * n_);
        for (int s = 0; s < static_cast<int>(segs_.size()); ++s) {
            Eigen::AlignedBox2d b;
            b.extend(segs_[s][0]);
            b.extend(segs_[s][1]);
            const auto [i0, j0] = cell(b.min());
            const auto [i1, j1] = cell(b.max());
            for (int j = j0; j <= j1; ++j)
                for (int i = i0; i <= i1; ++i) cells_[j * n_ + i].push_back(s);
        }
    }

    /// True when the distance from p to every segment is at least r.
    bool clear(const Point2& p, double r) const {
        const auto [i0, j0] = cell(p - Point2(r, r));
        const auto [i1, j1] = cell(p + Point2(r, r));
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i)
                for (int s : cells_[j * n_ + i])
                    if (point_segment_distance(p, segs_[s][0], segs_[s][1]) < r) return false;
        return true;
    }

private:
    std::pair<int, int> cell(const Point2& p) const {
        const int i = std::clamp(static_cast<int>(std::floor((p.x() - box_.min().x()) / c_)), 0, n_ - 1);
        const int j = std::clamp(static_cast<int>(std::floor((p.y() - box_.min().y()) / c_)), 0, n_ - 1);
        return {i, j};
    }

    std::vector<std::array<Point2, 2>> segs_;
    Eigen::AlignedBox2d box_;
    int n_ = 1;
    double c_ = 1;
    std::vector<std::vector<int>> cells_;
};

}  // namespace detail

/// Meshes the region bounded by `loops` (outer loop ccw, holes cw). The
/// output starts with the loop vertices in input order; interior points come
/// from nested triangular lattices whose spacing follows a graded size field
/// capped by `hmax`.
inline PlanarMesh mesh_planar_region(const std::vector<std::vector<Point2>>& loops,
                                     const std::function<double(const Point2&)>& hmax,
                                     const PlanarMeshOptions& opt = {}) {
    if (loops.empty() || loops[0].size() < 3) throw Error("mesh_planar_region: need a loop");
    PlanarMesh out;
    std::vector<std::array<int, 2>> segments;
    for (const auto& l : loops) {
        const int base = static_cast<int>(out.points.size());
        for (size_t k = 0; k < l.size(); ++k) {
            out.points.push_back(l[k]);
            segments.push_back({base + static_cast<int>(k), base + static_cast<int>((k + 1) % l.size())});
        }
    }
    const int nb = static_cast<int>(out.points.size());

    detail::SizeGrid size(loops, hmax, opt.grade);
    detail::SegmentGrid segs(loops);
    Eigen::AlignedBox2d box;
    for (const auto& p : loops[0]) box.extend(p);

    double hmin = std::numeric_limits<double>::infinity(), hmaxv = 0.0;
    for (const auto& l : loops)
        for (const auto& p : l) hmin = std::min(hmin, size(p));
    // coarse scan for the largest admissible size
    for (int j = 0; j <= 64; ++j)
        for (int i = 0; i <= 64; ++i) {
            const Point2 p = box.min() + Point2(box.sizes().x() * i / 64.0, box.sizes().y() * j / 64.0);
            if (inside_loops(loops, p)) hmaxv = std::max(hmaxv, size(p));
        }
    hmaxv = std::max(hmaxv, hmin);
    int levels = 0;
    double d0 = hmin;
    while (d0 < hmaxv) { d0 *= 2.0; ++levels; }

    const double s3 = std::sqrt(3.0) / 2.0;
    for (int L = 0; L <= levels; ++L) {
        const double d = d0 / std::pow(2.0, L);
        const double dy = d * s3;
        const long long j0 = static_cast<long long>(std::floor(box.min().y() / dy)) - 1;
        const long long j1 = static_cast<long long>(std::ceil(box.max().y() / dy)) + 1;
        for (long long j = j0; j <= j1; ++j) {
            const double y = j * dy;
            // scanline crossings
            std::vector<double> xs;
            for (const auto& l : loops)
                for (size_t a = 0, b = l.size() - 1; a < l.size(); b = a++) {
                    const Point2 &p = l[a], &q = l[b];
                    if ((p.y() > y) != (q.y() > y))
                        xs.push_back(p.x() + (y - p.y()) * (q.x() - p.x()) / (q.y() - p.y()));
                }
            std::sort(xs.begin(), xs.end());
            const double off = (j & 1) ? 0.5 * d : 0.0;
            for (size_t s = 0; s + 1 < xs.size(); s += 2) {
                const long long i0 = static_cast<long long>(std::ceil((xs[s] - off) / d));
                const long long i1 = static_cast<long long>(std::floor((xs[s + 1] - off) / d));
                for (long long i = i0; i <= i1; ++i) {
                    const Point2 p(i * d + off, y);
                    const double h = size(p);
                    const bool level_ok = (L == 0 || h < 2.0 * d) && (L == levels || h >= d);
                    if (!level_ok) continue;
                    if (!segs.clear(p, opt.clearance * h)) continue;
                    out.points.push_back(p);
                }
            }
        }
    }

    Delaunay2 dt(out.points);
    for (auto [a, b] : segments) {
        if (!dt.recover_segment(a, b))
            throw Error(concat("mesh_planar_region: boundary segment ", a, "-", b, " not recovered"));
        dt.lock(a, b);
    }
    dt.make_delaunay();
    for (const Tri& t : dt.triangles()) {
        const Point2 c = (out.points[t[0]] + out.points[t[1]] + out.points[t[2]]) / 3.0;
        if (inside_loops(loops, c)) out.triangles.push_back(t);
    }

    // Laplacian smoothing of interior points, rejecting moves that flip triangles
    std::vector<std::vector<int>> adj(out.points.size()), vt(out.points.size());
    for (int t = 0; t < static_cast<int>(out.triangles.size()); ++t)
        for (int k = 0; k < 3; ++k) {
            adj[out.triangles[t][k]].push_back(out.triangles[t][(k + 1) % 3]);
            vt[out.triangles[t][k]].push_back(t);
        }
    for (int pass = 0; pass < opt.smoothing_passes; ++pass)
        for (int v = nb; v < static_cast<int>(out.points.size()); ++v) {
            if (adj[v].empty()) continue;
            Point2 c = Point2::Zero();
            for (int w : adj[v]) c += out.points[w];
            c /= static_cast<double>(adj[v].size());
            const Point2 old = out.points[v];
            out.points[v] = old + 0.5 * (c - old);
            bool ok = true;
            for (int t : vt[v]) {
                const Tri& f = out.triangles[t];
                if (orient2d(out.points[f[0]], out.points[f[1]], out.points[f[2]]) <= 0.0) { ok = false; break; }
            }
            if (!ok) out.points[v] = old;
        }

    // drop unused interior points (outside triangles removed)
    std::vector<int> used(out.points.size(), 0), remap(out.points.size(), -1);
    for (int v = 0; v < nb; ++v) used[v] = 1;
    for (const Tri& t : out.triangles)
        for (int v : t) used[v] = 1;
    PlanarMesh res;
    for (int v = 0; v < static_cast<int>(out.points.size()); ++v)
        if (used[v]) { remap[v] = static_cast<int>(res.points.size()); res.points.push_back(out.points[v]); }
    for (const Tri& t : out.triangles) res.triangles.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
    return res;
}

}  // namespace hplateau
