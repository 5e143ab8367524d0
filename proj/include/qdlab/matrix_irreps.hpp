#pragma once

// Unitary matrix irreps for the catalog groups (cyclic, dihedral, S3, S4 and
// direct products of these). Only the lattice ribbon Fourier operators need
// matrix elements; character-only operations never call into here.

#include <Eigen/Dense>

#include "qdlab/character_table.hpp"
#include "qdlab/group.hpp"

namespace qdlab {

struct MatrixIrrep {
    int dim = 1;
    std::vector<Eigen::MatrixXcd> mats;  // one unitary per group element
};

namespace detail {

inline std::vector<MatrixIrrep> irreps_cyclic(int n) {
    std::vector<MatrixIrrep> out(n);
    for (int j = 0; j < n; ++j) {
        out[j].dim = 1;
        out[j].mats.resize(n);
        for (int a = 0; a < n; ++a) {
            Eigen::MatrixXcd m(1, 1);
            m(0, 0) = std::polar(1.0, 2 * M_PI * j * a / n);
            out[j].mats[a] = m;
        }
    }
    return out;
}

inline std::vector<MatrixIrrep> irreps_dihedral(int n) {
    // element order: r^i (i<n), then s r^i
    std::vector<MatrixIrrep> out;
    auto linear = [&](double rsign, double ssign) {
        MatrixIrrep ir;
        ir.dim = 1;
        ir.mats.resize(2 * n);
        for (int i = 0; i < n; ++i) {
            Eigen::MatrixXcd m(1, 1);
            m(0, 0) = std::pow(rsign, i);
            ir.mats[i] = m;
            m(0, 0) = ssign * std::pow(rsign, i);
            ir.mats[n + i] = m;
        }
        return ir;
    };
    out.push_back(linear(1, 1));
    out.push_back(linear(1, -1));
    if (n % 2 == 0) {
        out.push_back(linear(-1, 1));
        out.push_back(linear(-1, -1));
    }
    for (int k = 1; 2 * k < n || (2 * k == n && false); ++k) {
        if (2 * k >= n) break;
        MatrixIrrep ir;
        ir.dim = 2;
        ir.mats.resize(2 * n);
        for (int i = 0; i < n; ++i) {
            double th = 2 * M_PI * k * i / n;
            Eigen::MatrixXcd rot(2, 2), refl(2, 2);
            rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
            refl << std::cos(th), std::sin(th), std::sin(th), -std::cos(th);
            ir.mats[i] = rot;
            ir.mats[n + i] = refl;  // s r^i
        }
        out.push_back(ir);
    }
    return out;
}

// permutation matrices of S_n in the catalog's lexicographic element order
inline std::vector<Eigen::MatrixXd> perm_matrices(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Eigen::MatrixXd> out;
    do {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (int x = 0; x < n; ++x) m(p[x], x) = 1;
        out.push_back(m);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// standard (n-1)-dim irrep of S_n: permutation action restricted to the
// complement of the all-ones vector
inline MatrixIrrep standard_irrep_sym(int n) {
    auto perms = perm_matrices(n);
    // orthonormal basis of the complement of (1,..,1)
    Eigen::MatrixXd B(n, n - 1);
    for (int j = 0; j < n - 1; ++j) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= j; ++i) v(i) = 1;
        v(j + 1) = -(j + 1);
        B.col(j) = v / v.norm();
    }
    MatrixIrrep ir;
    ir.dim = n - 1;
    for (auto& P : perms) ir.mats.push_back((B.transpose() * P * B).cast<Complex>());
    return ir;
}

inline double perm_sign(const FiniteGroup& G, Elem g, int n) {
    // count inversions of the g-th lexicographic permutation
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = 0; i < g; ++i) std::next_permutation(p.begin(), p.end());
    int inv = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (p[a] > p[b]) ++inv;
    return inv % 2 ? -1.0 : 1.0;
}

inline std::vector<MatrixIrrep> irreps_symmetric(const FiniteGroup& G, int n) {
    std::vector<MatrixIrrep> out;
    MatrixIrrep triv;
    triv.dim = 1;
    triv.mats.assign(G.order(), Eigen::MatrixXcd::Ones(1, 1));
    out.push_back(triv);
    if (n >= 2) {
        MatrixIrrep sgn;
        sgn.dim = 1;
        sgn.mats.resize(G.order());
        for (Elem g = 0; g < G.order(); ++g) {
            Eigen::MatrixXcd m(1, 1);
            m(0, 0) = perm_sign(G, g, n);
            sgn.mats[g] = m;
        }
        out.push_back(sgn);
        MatrixIrrep std_ir = standard_irrep_sym(n);
        out.push_back(std_ir);
        if (n >= 4) {
            MatrixIrrep std_sgn = std_ir;
            for (Elem g = 0; g < G.order(); ++g) std_sgn.mats[g] *= perm_sign(G, g, n);
            out.push_back(std_sgn);
        }
        if (n == 4) {
            // 2-dim irrep via the quotient S4 / V4 ~ S3 acting through the
            // 2-dim irrep of S3. The quotient map sends a permutation to the
            // induced permutation of the three pairings of {0,1,2,3}.
            FiniteGroup S3 = symmetric_group(3);
            auto s3irs = irreps_symmetric(S3, 3);
            const MatrixIrrep& two = s3irs[2];
            // pairings: 0:{01|23} 1:{02|13} 2:{03|12}
            auto pairing_perm = [&](const std::vector<int>& p) {
                auto pair_id = [&](int a, int b) {
                    int x = std::min(a, b), y = std::max(a, b);
                    if (x == 0 && y == 1) return 0;
                    if (x == 0 && y == 2) return 1;
                    if (x == 0 && y == 3) return 2;
                    if (x == 2 && y == 3) return 0;
                    if (x == 1 && y == 3) return 1;
                    return 2;  // {1,2}
                };
                std::vector<int> q(3);
                q[0] = pair_id(p[0], p[1]);
                q[1] = pair_id(p[0], p[2]);
                q[2] = pair_id(p[0], p[3]);
                return q;
            };
            std::vector<int> p(4);
            std::iota(p.begin(), p.end(), 0);
            MatrixIrrep ir;
            ir.dim = 2;
            int g = 0;
            do {
                auto q = pairing_perm(p);
                // locate q among lexicographic S3 permutations
                std::vector<int> r(3);
                std::iota(r.begin(), r.end(), 0);
                int qi = 0;
                while (r != q) { std::next_permutation(r.begin(), r.end()); ++qi; }
                ir.mats.push_back(two.mats[qi]);
                ++g;
            } while (std::next_permutation(p.begin(), p.end()));
            out.push_back(ir);
        }
    }
    return out;
}

inline std::vector<MatrixIrrep> tensor_irreps(const std::vector<MatrixIrrep>& A, int nb,
                                              const std::vector<MatrixIrrep>& B) {
    std::vector<MatrixIrrep> out;
    for (const auto& a : A)
        for (const auto& b : B) {
            MatrixIrrep ir;
            ir.dim = a.dim * b.dim;
            ir.mats.reserve(a.mats.size() * b.mats.size());
            for (const auto& ma : a.mats)
                for (const auto& mb : b.mats) {
                    Eigen::MatrixXcd m(ir.dim, ir.dim);
                    for (int i = 0; i < a.dim; ++i)
                        for (int j = 0; j < a.dim; ++j)
                            m.block(i * b.dim, j * b.dim, b.dim, b.dim) = ma(i, j) * mb;
                    ir.mats.push_back(m);
                }
            ir.mats.shrink_to_fit();
            (void)nb;
            out.push_back(std::move(ir));
        }
    return out;
}

inline std::vector<MatrixIrrep> irreps_by_name(const FiniteGroup& G, const std::string& name);

inline std::vector<MatrixIrrep> irreps_product(const FiniteGroup& G, const std::string& name) {
    // split at the last top-level 'x' (product names are left-associated)
    size_t pos = name.rfind('x');
    if (pos == std::string::npos) throw std::runtime_error("not a product name: " + name);
    std::string left = name.substr(0, pos), right = name.substr(pos + 1);
    // rebuild factor groups from names to get orders
    auto build = [](const std::string& n) -> FiniteGroup {
        if (n[0] == 'Z') return cyclic_group(std::stoi(n.substr(1)));
        if (n[0] == 'D') return dihedral_group(std::stoi(n.substr(1)));
        if (n[0] == 'S') return symmetric_group(std::stoi(n.substr(1)));
        if (n.find('x') != std::string::npos) {
            size_t p = n.rfind('x');
            FiniteGroup a = [&]() {
                std::string ln = n.substr(0, p);
                if (ln.find('x') == std::string::npos) {
                    if (ln[0] == 'Z') return cyclic_group(std::stoi(ln.substr(1)));
                    if (ln[0] == 'D') return dihedral_group(std::stoi(ln.substr(1)));
                    if (ln[0] == 'S') return symmetric_group(std::stoi(ln.substr(1)));
                }
                throw std::runtime_error("cannot rebuild factor " + ln);
            }();
            FiniteGroup b = [&]() {
                std::string rn = n.substr(p + 1);
                if (rn[0] == 'Z') return cyclic_group(std::stoi(rn.substr(1)));
                if (rn[0] == 'D') return dihedral_group(std::stoi(rn.substr(1)));
                if (rn[0] == 'S') return symmetric_group(std::stoi(rn.substr(1)));
                throw std::runtime_error("cannot rebuild factor " + rn);
            }();
            return direct_product(a, b);
        }
        throw std::runtime_error("unknown factor name " + n);
    };
    FiniteGroup A = build(left), B = build(right);
    if (A.order() * B.order() != G.order())
        throw std::runtime_error("product name does not match order");
    return tensor_irreps(irreps_by_name(A, left), B.order(), irreps_by_name(B, right));
}

inline std::vector<MatrixIrrep> irreps_by_name(const FiniteGroup& G, const std::string& name) {
    if (name.find('x') != std::string::npos) return irreps_product(G, name);
    if (name.size() >= 2 && name[0] == 'Z') return irreps_cyclic(G.order());
    if (name.size() >= 2 && name[0] == 'D') return irreps_dihedral(G.order() / 2);
    if (name == "S1") return irreps_cyclic(1);
    if (name == "S2") return irreps_cyclic(2);
    if (name == "S3") return irreps_symmetric(G, 3);
    if (name == "S4") return irreps_symmetric(G, 4);
    throw std::runtime_error("matrix irreps unavailable for group '" + name +
                             "' (catalog: cyclic, dihedral, S3, S4, products)");
}

}  // namespace detail

namespace detail {

inline std::vector<MatrixIrrep> align_to_table(const FiniteGroup& G, const CharacterTable& ct,
                                               std::vector<MatrixIrrep> raw) {
    if (raw.size() != ct.rows.size())
        throw std::runtime_error("matrix irrep catalog incomplete for " + G.name());
    std::vector<MatrixIrrep> out(ct.rows.size());
    std::vector<bool> used(raw.size(), false);
    for (size_t r = 0; r < ct.rows.size(); ++r) {
        bool found = false;
        for (size_t c = 0; c < raw.size() && !found; ++c) {
            if (used[c]) continue;
            double worst = 0;
            for (Elem g = 0; g < G.order(); ++g)
                worst = std::max(worst, std::abs(raw[c].mats[g].trace() - ct.rows[r][g]));
            if (worst < 1e-9) {
                out[r] = std::move(raw[c]);
                used[c] = true;
                found = true;
            }
        }
        if (!found)
            throw std::runtime_error("no catalog irrep matches character row " + std::to_string(r) +
                                     " of " + G.name());
    }
    return out;
}

inline int elem_order(const FiniteGroup& G, Elem g) {
    int o = 1;
    Elem x = g;
    while (x != 0) { x = G.mul(x, g); ++o; }
    return o;
}

// isomorphism H -> C by mapping a generating pair and extending by words
inline std::vector<int> find_isomorphism(const FiniteGroup& H, const FiniteGroup& C) {
    if (H.order() != C.order()) return {};
    // generating pair of C (smallest indices)
    std::pair<Elem, Elem> gens{-1, -1};
    for (Elem a = 1; a < C.order() && gens.first < 0; ++a)
        for (Elem b = a; b < C.order(); ++b)
            if (subgroup_from_generators(C, {a, b}).order() == C.order()) { gens = {a, b}; break; }
    if (gens.first < 0) return {};
    auto [a, b] = gens;
    int oa = elem_order(C, a), ob = elem_order(C, b);
    for (Elem x = 1; x < H.order(); ++x) {
        if (elem_order(H, x) != oa) continue;
        for (Elem y = 1; y < H.order(); ++y) {
            if (elem_order(H, y) != ob) continue;
            // grow the map by closing words in both groups simultaneously
            std::vector<int> map(C.order(), -1);
            map[0] = 0;
            map[a] = x;
            map[b] = y;
            bool ok = true;
            bool grew = true;
            while (grew && ok) {
                grew = false;
                for (Elem u = 0; u < C.order() && ok; ++u) {
                    if (map[u] < 0) continue;
                    for (Elem v : {a, b}) {
                        Elem uv = C.mul(u, v);
                        Elem img = H.mul(map[u], map[v]);
                        if (map[uv] < 0) { map[uv] = img; grew = true; }
                        else if (map[uv] != img) { ok = false; break; }
                    }
                }
            }
            if (!ok) continue;
            std::vector<bool> hit(H.order(), false);
            bool bij = true;
            for (Elem u = 0; u < C.order(); ++u) {
                if (map[u] < 0 || hit[map[u]]) { bij = false; break; }
                hit[map[u]] = true;
            }
            if (!bij) continue;
            // verify full homomorphism
            bool hom = true;
            for (Elem u = 0; u < C.order() && hom; ++u)
                for (Elem v = 0; v < C.order(); ++v)
                    if (map[C.mul(u, v)] != H.mul(map[u], map[v])) { hom = false; break; }
            if (hom) return map;
        }
    }
    return {};
}

}  // namespace detail

// Matrix irreps aligned with the rows of character_table(G): result[r] has
// traces matching ct.rows[r] to 1e-9.
inline std::vector<MatrixIrrep> matrix_irreps(const FiniteGroup& G) {
    auto ct = character_table(G);
    return detail::align_to_table(G, ct, detail::irreps_by_name(G, G.name()));
}

// Matrix irreps for an arbitrary small group (typically a centralizer or
// stabilizer subgroup): abelian groups use their characters directly, and
// nonabelian ones are matched against the catalog by isomorphism search.
inline std::vector<MatrixIrrep> matrix_irreps_any(const FiniteGroup& G) {
    auto ct = character_table(G);
    if (G.is_abelian()) {
        std::vector<MatrixIrrep> out(ct.irrep_count());
        for (int r = 0; r < ct.irrep_count(); ++r) {
            out[r].dim = 1;
            out[r].mats.resize(G.order());
            for (Elem g = 0; g < G.order(); ++g) {
                Eigen::MatrixXcd m(1, 1);
                m(0, 0) = ct.rows[r][g];
                out[r].mats[g] = m;
            }
        }
        return out;
    }
    std::vector<FiniteGroup> candidates;
    const int n = G.order();
    if (n == 6) candidates.push_back(symmetric_group(3));
    if (n % 2 == 0) candidates.push_back(dihedral_group(n / 2));
    if (n == 24) candidates.push_back(symmetric_group(4));
    for (const auto& C : candidates) {
        auto map = detail::find_isomorphism(G, C);  // map: C -> G
        if (map.empty()) continue;
        std::vector<int> inv(n);
        for (Elem u = 0; u < n; ++u) inv[map[u]] = u;
        auto raw = detail::irreps_by_name(C, C.name());
        for (auto& ir : raw) {
            std::vector<Eigen::MatrixXcd> remapped(n);
            for (Elem g = 0; g < n; ++g) remapped[g] = ir.mats[inv[g]];
            ir.mats = std::move(remapped);
        }
        return detail::align_to_table(G, ct, std::move(raw));
    }
    throw std::runtime_error("matrix irreps unavailable for nonabelian group of order " +
                             std::to_string(n) + " outside the catalog");
}

}  // namespace qdlab
