#pragma once

// Reader and writer for the `hpmesh 1` ASCII format:
//
//   hpmesh 1
//   v x y z          one per vertex, 17 significant digits
//   f i j k          one per triangle, 0-based
//   b i1 i2 ... in   boundary loop (optional, at most once)
//
// Unknown line tags are rejected.

#include "mesh.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace hplateau {

inline void write_hpmesh(std::ostream& os, const TriangulatedDisk& m) {
    os << "hpmesh 1\n";
    char buf[128];
    for (const auto& p : m.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.x(), p.y(), p.z());
        os << buf;
    }
    for (const Tri& f : m.triangles) os << "f " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    if (!m.boundary_loop.empty()) {
        os << 'b';
        for (int v : m.boundary_loop) os << ' ' << v;
        os << '\n';
    }
}

inline std::string to_hpmesh_string(const TriangulatedDisk& m) {
    std::ostringstream os;
    write_hpmesh(os, m);
    return os.str();
}

inline TriangulatedDisk read_hpmesh(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error("hpmesh: empty input");
    if (line != "hpmesh 1") throw Error("hpmesh: bad header '" + line + "'");
    TriangulatedDisk m;
    bool have_loop = false;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            std::string xs, ys, zs;
            if (!(ls >> xs >> ys >> zs)) throw Error(concat("hpmesh: bad vertex at line ", lineno));
            Point3 p(std::strtod(xs.c_str(), nullptr), std::strtod(ys.c_str(), nullptr),
                     std::strtod(zs.c_str(), nullptr));
            if (!all_finite(p)) throw Error(concat("hpmesh: non-finite vertex at line ", lineno));
            m.vertices.push_back(p);
        } else if (tag == "f") {
            Tri f;
            if (!(ls >> f[0] >> f[1] >> f[2])) throw Error(concat("hpmesh: bad face at line ", lineno));
            m.triangles.push_back(f);
        } else if (tag == "b") {
            if (have_loop) throw Error(concat("hpmesh: second boundary loop at line ", lineno));
            have_loop = true;
            int v;
            while (ls >> v) m.boundary_loop.push_back(v);
        } else {
            throw Error(concat("hpmesh: unknown line tag '", tag, "' at line ", lineno));
        }
        std::string rest;
        if (tag != "b" && (ls >> rest)) throw Error(concat("hpmesh: trailing data at line ", lineno));
    }
    const int n = m.num_vertices();
    for (const Tri& f : m.triangles)
        for (int v : f)
            if (v < 0 || v >= n) throw Error("hpmesh: face index out of range");
    for (int v : m.boundary_loop)
        if (v < 0 || v >= n) throw Error("hpmesh: boundary index out of range");
    return m;
}

inline TriangulatedDisk read_hpmesh_string(const std::string& s) {
    std::istringstream is(s);
    return read_hpmesh(is);
}

inline void save_hpmesh(const std::string& path, const TriangulatedDisk& m) {
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path);
    write_hpmesh(os, m);
}

inline TriangulatedDisk load_hpmesh(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot read " + path);
    return read_hpmesh(is);
}

}  // namespace hplateau
