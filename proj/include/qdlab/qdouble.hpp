#pragma once

// Anyons of the quantum double D(G): pairs (conjugacy class C, irrep of the
// centralizer E(C)), their quantum dimensions, modular S and T matrices, and
// Verlinde fusion rules.

#include <Eigen/Dense>

#include "qdlab/character_table.hpp"
#include "qdlab/group.hpp"

namespace qdlab {

struct Anyon {
    int class_index = 0;   // into conjugacy_classes(G)
    int irrep_index = 0;   // into character_table(E(C))
    std::string label;
    int class_size = 1;
    int irrep_dim = 1;

    double fpdim() const { return double(class_size) * irrep_dim; }
};

struct AnyonSystem {
    FiniteGroup group;
    std::vector<ConjugacyClass> classes;
    std::vector<CharacterTable> centralizer_tables;  // one per class
    std::vector<SubgroupGroup> centralizer_groups;
    std::vector<Anyon> anyons;
    std::vector<double> dims;
    Eigen::MatrixXcd S;
    Eigen::VectorXcd T;

    int count() const { return static_cast<int>(anyons.size()); }
    int dual(int a) const { return dual_[a]; }
    std::vector<int> dual_;
};

inline AnyonSystem anyon_system(const FiniteGroup& G) {
    AnyonSystem sys;
    sys.group = G;
    sys.classes = conjugacy_classes(G);
    const bool zn = G.is_abelian() && G.name().size() && G.name()[0] == 'Z';
    for (size_t ci = 0; ci < sys.classes.size(); ++ci) {
        auto sg = subgroup_as_group(G, sys.classes[ci].centralizer);
        auto ct = character_table(sg.group);
        for (int r = 0; r < ct.irrep_count(); ++r) {
            Anyon a;
            a.class_index = static_cast<int>(ci);
            a.irrep_index = r;
            a.class_size = static_cast<int>(sys.classes[ci].elems.size());
            a.irrep_dim = ct.dims[r];
            sys.anyons.push_back(a);
        }
        sys.centralizer_groups.push_back(std::move(sg));
        sys.centralizer_tables.push_back(std::move(ct));
    }

    // display labels
    for (auto& a : sys.anyons) {
        const auto& ct = sys.centralizer_tables[a.class_index];
        const auto& sg = sys.centralizer_groups[a.class_index];
        if (G.name() == "Z2") {
            static const char* names[] = {"1", "e", "m", "em"};
            a.label = names[a.class_index * 2 + a.irrep_index];
        } else if (zn) {
            // e^{a1} m^{a2}: a2 = class element, a1 = character exponent
            int n = G.order();
            int a2 = sys.classes[a.class_index].rep;
            // character exponent: chi(g) = omega^{a1 g}; read off at g=1
            int a1 = 0;
            if (n > 1) {
                Complex v = ct.rows[a.irrep_index][sg.from_parent[1]];
                double ang = std::arg(v) / (2 * M_PI / n);
                a1 = (static_cast<int>(std::llround(ang)) % n + n) % n;
            }
            std::string s;
            if (a1 == 1) s += "e";
            else if (a1 > 1) s += "e" + std::to_string(a1);
            if (a2 == 1) s += "m";
            else if (a2 > 1) s += "m" + std::to_string(a2);
            a.label = s.empty() ? "1" : s;
        } else if (G.name() == "S3") {
            if (a.class_index == 0) a.label = std::string(1, "ABC"[a.irrep_index]);
            else if (a.class_index == 2) a.label = std::string(1, "DE"[a.irrep_index]);
            else {
                if (a.irrep_index == 0) a.label = "F";
                else {
                    // G: chi(r)=omega, H: chi(r)=omega^2, r = class rep of the
                    // rotation class
                    Elem r = sys.classes[1].rep;
                    Complex v = ct.rows[a.irrep_index][sg.from_parent[r]];
                    a.label = (std::abs(v - std::polar(1.0, 2 * M_PI / 3)) < 1e-9) ? "G" : "H";
                }
            }
        } else {
            a.label = "(" + std::to_string(sys.classes[a.class_index].rep) + "," +
                      std::to_string(a.irrep_index) + ")";
        }
    }

    const int n = sys.count();
    sys.dims.resize(n);
    for (int i = 0; i < n; ++i) sys.dims[i] = sys.anyons[i].fpdim();

    // modular data: S_{(A,a),(B,b)} = (1/|G|) sum_{x in A, y in B, xy=yx}
    //   conj(chi_a(p_x^-1 y p_x)) conj(chi_b(p_y^-1 x p_y))
    sys.S.resize(n, n);
    sys.T.resize(n);
    for (int i = 0; i < n; ++i) {
        const Anyon& A = sys.anyons[i];
        const auto& cls = sys.classes[A.class_index];
        const auto& ct = sys.centralizer_tables[A.class_index];
        const auto& sg = sys.centralizer_groups[A.class_index];
        sys.T(i) = ct.rows[A.irrep_index][sg.from_parent[cls.rep]] / double(A.irrep_dim);
        for (int j = 0; j < n; ++j) {
            const Anyon& B = sys.anyons[j];
            const auto& clsB = sys.classes[B.class_index];
            const auto& ctB = sys.centralizer_tables[B.class_index];
            const auto& sgB = sys.centralizer_groups[B.class_index];
            Complex s = 0;
            for (size_t xi = 0; xi < cls.elems.size(); ++xi) {
                Elem x = cls.elems[xi], px = cls.transversal[xi];
                for (size_t yi = 0; yi < clsB.elems.size(); ++yi) {
                    Elem y = clsB.elems[yi], py = clsB.transversal[yi];
                    if (G.mul(x, y) != G.mul(y, x)) continue;
                    Elem u = G.mul(G.mul(G.inv(px), y), px);
                    Elem v = G.mul(G.mul(G.inv(py), x), py);
                    s += std::conj(ct.rows[A.irrep_index][sg.from_parent[u]]) *
                         std::conj(ctB.rows[B.irrep_index][sgB.from_parent[v]]);
                }
            }
            sys.S(i, j) = s / double(G.order());
        }
    }

    // charge conjugation from S^2
    sys.dual_.resize(n);
    Eigen::MatrixXcd S2 = sys.S * sys.S;
    for (int i = 0; i < n; ++i) {
        int d = -1;
        for (int j = 0; j < n; ++j)
            if (std::abs(S2(i, j) - 1.0) < 1e-6) { d = j; break; }
        if (d < 0) throw std::runtime_error("anyon_system: S^2 is not a permutation");
        sys.dual_[i] = d;
    }
    return sys;
}

// Verlinde fusion coefficients from a unitary S matrix with positive first row.
inline std::vector<std::vector<std::vector<int>>> fusion_rules(const Eigen::MatrixXcd& S,
                                                               double tol = 1e-6) {
    const int n = static_cast<int>(S.rows());
    for (int x = 0; x < n; ++x)
        if (!(S(0, x).real() > 0) || std::abs(S(0, x).imag()) > tol)
            throw std::runtime_error("fusion_rules: first row of S must be strictly positive");
    std::vector<std::vector<std::vector<int>>> N(
        n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                Complex v = 0;
                for (int x = 0; x < n; ++x) v += S(a, x) * S(b, x) * std::conj(S(c, x)) / S(0, x);
                double r = v.real();
                if (std::abs(v.imag()) > tol || std::abs(r - std::round(r)) > tol || std::round(r) < -0.1)
                    throw std::runtime_error("fusion_rules: non-integer Verlinde coefficient (bad S input)");
                N[a][b][c] = static_cast<int>(std::round(r));
            }
    return N;
}

}  // namespace qdlab
