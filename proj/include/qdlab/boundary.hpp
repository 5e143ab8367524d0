#pragma once

// Boundary excitations (T,R), defect types, bulk<->boundary condensation and
// Lagrangian boundary labels for subgroup boundaries of D(G).
//
// Condensation coefficients are computed by decomposing the restriction of a
// D(G)-irrep along the algebra embedding Z(G,1,K,1) -> D(G),
// Z^{(hK,k)} = sum_{j in hK} D^{(j,k)}. The boundary algebra is the
// transformation groupoid algebra of K acting on G/K, so its irreducible
// characters live on pairs (double coset T, irrep R of the stabilizer K^{r_T})
// and multiplicities come out of a plain character pairing.

#include <functional>

#include "qdlab/character_table.hpp"
#include "qdlab/group.hpp"
#include "qdlab/qdouble.hpp"

namespace qdlab {

struct BoundaryExcitation {
    int coset_index = 0;   // into double_cosets(G,K,K)
    int irrep_index = 0;   // into character_table(stabilizer)
    std::string label;
    double fpdim = 1.0;    // |K| dim(R) / |K^{r_T}|
};

struct DefectType {
    int coset_index = 0;   // into double_cosets(G,K1,K2)
    int irrep_index = 0;
    std::string label;
    double fpdim = 1.0;    // sqrt(|K1||K2|) dim(R) / |(K1,K2)^{r_T}|
};

struct BoundaryData {
    FiniteGroup group;
    Subgroup K;
    std::vector<DoubleCoset> cosets;
    std::vector<SubgroupGroup> stab_groups;
    std::vector<CharacterTable> stab_tables;
    std::vector<BoundaryExcitation> excitations;
    CosetDecomposition gmodk;
};

inline BoundaryData boundary_excitations(const FiniteGroup& G, const Subgroup& K) {
    require_subgroup(G, K);
    BoundaryData bd;
    bd.group = G;
    bd.K = K;
    bd.cosets = double_cosets(G, K, K);
    bd.gmodk = left_cosets(G, K);
    for (size_t t = 0; t < bd.cosets.size(); ++t) {
        auto sg = subgroup_as_group(G, bd.cosets[t].stabilizer);
        auto ct = character_table(sg.group);
        for (int r = 0; r < ct.irrep_count(); ++r) {
            BoundaryExcitation x;
            x.coset_index = static_cast<int>(t);
            x.irrep_index = r;
            x.fpdim = double(K.order()) * ct.dims[r] / bd.cosets[t].stabilizer.order();
            x.label = "(T" + std::to_string(t) + ",R" + std::to_string(r) + ")";
            bd.excitations.push_back(x);
        }
        bd.stab_groups.push_back(std::move(sg));
        bd.stab_tables.push_back(std::move(ct));
    }
    return bd;
}

inline std::vector<DefectType> defect_types(const FiniteGroup& G, const Subgroup& K1,
                                            const Subgroup& K2) {
    require_subgroup(G, K1);
    require_subgroup(G, K2);
    auto cosets = double_cosets(G, K1, K2);
    std::vector<DefectType> out;
    for (size_t t = 0; t < cosets.size(); ++t) {
        auto sg = subgroup_as_group(G, cosets[t].stabilizer);
        auto ct = character_table(sg.group);
        for (int r = 0; r < ct.irrep_count(); ++r) {
            DefectType d;
            d.coset_index = static_cast<int>(t);
            d.irrep_index = r;
            d.fpdim = std::sqrt(double(K1.order()) * K2.order()) * ct.dims[r] /
                      cosets[t].stabilizer.order();
            d.label = "(T" + std::to_string(t) + ",R" + std::to_string(r) + ")";
            out.push_back(d);
        }
    }
    return out;
}

namespace detail {

// character of the Z(G,1,K,1)-irrep (T,R) on the basis element Z^{(hK,k)}:
// nonzero iff hK lies in T and k stabilizes hK, with value chi_R(q^-1 k q)
// for q in K taking the base point r_T K to hK.
struct ZIrrepChar {
    const FiniteGroup* G;
    const BoundaryData* bd;
    int coset_index;
    int irrep_index;

    Complex operator()(int hK, Elem k) const {
        const auto& T = bd->cosets[coset_index];
        Elem h = bd->gmodk.reps[hK];
        if (!std::binary_search(T.elems.begin(), T.elems.end(), h)) return 0.0;
        if (bd->gmodk.coset_of[G->mul(k, h)] != hK) return 0.0;
        // find q in K with q r_T K = hK
        Elem q = -1;
        for (Elem c : bd->K.elems)
            if (bd->gmodk.coset_of[G->mul(c, T.rep)] == hK) { q = c; break; }
        Elem u = G->mul(G->mul(G->inv(q), k), q);
        const auto& sg = bd->stab_groups[coset_index];
        int li = sg.from_parent[u];
        if (li < 0) return 0.0;  // cannot happen for stabilizing k
        return bd->stab_tables[coset_index].rows[irrep_index][li];
    }
};

}  // namespace detail

// Integer matrix n[anyon][excitation] of condensation multiplicities for the
// boundary (G,K). Rows are bulk anyons of sys, columns boundary excitations.
inline std::vector<std::vector<int>> condensation_matrix(const AnyonSystem& sys,
                                                         const BoundaryData& bd) {
    const FiniteGroup& G = sys.group;
    std::vector<std::vector<int>> n(sys.count(), std::vector<int>(bd.excitations.size(), 0));
    for (int ia = 0; ia < sys.count(); ++ia) {
        const Anyon& A = sys.anyons[ia];
        const auto& cls = sys.classes[A.class_index];
        const auto& sg = sys.centralizer_groups[A.class_index];
        const auto& ct = sys.centralizer_tables[A.class_index];
        std::vector<bool> in_class(G.order(), false);
        for (Elem x : cls.elems) in_class[x] = true;
        std::vector<Elem> transporter(G.order(), -1);
        for (size_t i = 0; i < cls.elems.size(); ++i) transporter[cls.elems[i]] = cls.transversal[i];
        // chi of Res V_(C,pi) at Z^{(hK,k)} = sum_{j in hK cap C, jk=kj}
        //   chi_pi(p_j^-1 k p_j)
        auto chi_res = [&](int hK, Elem k) {
            Complex s = 0;
            for (Elem j : bd.gmodk.cosets[hK]) {
                if (!in_class[j] || G.mul(j, k) != G.mul(k, j)) continue;
                Elem p = transporter[j];
                Elem u = G.mul(G.mul(G.inv(p), k), p);
                s += ct.rows[A.irrep_index][sg.from_parent[u]];
            }
            return s;
        };
        for (size_t ix = 0; ix < bd.excitations.size(); ++ix) {
            detail::ZIrrepChar zc{&G, &bd, bd.excitations[ix].coset_index,
                                  bd.excitations[ix].irrep_index};
            Complex acc = 0;
            for (int hK = 0; hK < bd.gmodk.count(); ++hK)
                for (Elem k : bd.K.elems) acc += chi_res(hK, k) * std::conj(zc(hK, k));
            acc /= double(bd.K.order());
            double v = acc.real();
            if (std::abs(acc.imag()) > 1e-8 || std::abs(v - std::round(v)) > 1e-8 || std::round(v) < -0.1)
                throw std::runtime_error("condensation_matrix: non-integral multiplicity");
            n[ia][ix] = static_cast<int>(std::round(v));
        }
    }
    return n;
}

// uncondense is the transpose pairing: multiplicities of bulk anyons in the
// lift of a boundary excitation are the same integers.

struct LagrangianVector {
    std::vector<int> mult;  // indexed like the anyon system

    bool operator==(const LagrangianVector& o) const { return mult == o.mult; }
    bool operator<(const LagrangianVector& o) const { return mult < o.mult; }
};

// boundary label = lift of the boundary vacuum = column of the condensation
// matrix at the vacuum excitation
inline LagrangianVector boundary_label(const AnyonSystem& sys, const BoundaryData& bd,
                                       const std::vector<std::vector<int>>& cond) {
    // vacuum excitation: double coset of the identity, trivial irrep
    int vac = -1;
    for (size_t ix = 0; ix < bd.excitations.size(); ++ix) {
        const auto& x = bd.excitations[ix];
        if (bd.cosets[x.coset_index].rep == 0 && x.irrep_index == 0) { vac = int(ix); break; }
    }
    if (vac < 0) throw std::runtime_error("boundary vacuum excitation not found");
    LagrangianVector v;
    v.mult.resize(sys.count());
    for (int a = 0; a < sys.count(); ++a) v.mult[a] = cond[a][vac];
    return v;
}

// ---------------------------------------------------------------------------
// Defect fusion degeneracy dim Hom(1_{M1}, X_12 (x) X_23 (x) ... (x) X_n1).
//
// Each simple defect is a (K_i,K_{i+1})-biequivariant bundle on its double
// coset; the degeneracy is the dimension of the invariant subspace of the
// product bundle over tuples multiplying to the identity, computed by
// averaging characters over K_1 x ... x K_n.

struct DefectChainEntry {
    Subgroup left;     // K_i
    Subgroup right;    // K_{i+1} (must equal next entry's left)
    DefectType defect;
};

inline long long defect_fusion_degeneracy(const FiniteGroup& G,
                                          const std::vector<DefectChainEntry>& chain) {
    const int n = static_cast<int>(chain.size());
    if (n == 0) throw std::invalid_argument("empty defect chain");
    for (int i = 0; i < n; ++i) {
        const auto& cur = chain[i];
        const auto& nxt = chain[(i + 1) % n];
        if (cur.right.elems != nxt.left.elems)
            throw std::invalid_argument("defect chain does not close at position " + std::to_string(i));
    }
    // per-defect data: double coset elements, factor u_g with g = u r_T v
    struct Piece {
        std::vector<Elem> elems;
        std::vector<Elem> u;   // by position in elems
        Elem rep;
        SubgroupGroup stab;
        CharacterTable ct;
        int irrep;
    };
    std::vector<Piece> parts(n);
    for (int i = 0; i < n; ++i) {
        auto dcs = double_cosets(G, chain[i].left, chain[i].right);
        const auto& dc = dcs[chain[i].defect.coset_index];
        Piece p;
        p.elems = dc.elems;
        p.rep = dc.rep;
        p.u.assign(dc.elems.size(), -1);
        for (Elem uu : chain[i].left.elems)
            for (Elem vv : chain[i].right.elems) {
                Elem g = G.mul(G.mul(uu, dc.rep), vv);
                size_t pos = std::lower_bound(p.elems.begin(), p.elems.end(), g) - p.elems.begin();
                if (p.u[pos] < 0) p.u[pos] = uu;
            }
        p.stab = subgroup_as_group(G, dc.stabilizer);
        p.ct = character_table(p.stab.group);
        p.irrep = chain[i].defect.irrep_index;
        parts[i] = std::move(p);
    }
    // iterate over k-tuples (k_1..k_n) and fixed g-tuples with product 1
    Complex total = 0;
    std::vector<int> kidx(n, 0);
    std::vector<Elem> ks(n);
    auto piece_pos = [&](int i, Elem g) -> int {
        auto it = std::lower_bound(parts[i].elems.begin(), parts[i].elems.end(), g);
        if (it == parts[i].elems.end() || *it != g) return -1;
        return static_cast<int>(it - parts[i].elems.begin());
    };
    std::function<void(int)> loop_k = [&](int i) {
        if (i == n) {
            // enumerate fixed tuples: k_i g_i k_{i+1}^-1 = g_i, prod g_i = 1
            std::vector<Elem> gs(n);
            std::function<void(int, Elem)> loop_g = [&](int j, Elem prod) {
                if (j == n - 1) {
                    Elem gn = G.inv(prod);
                    int pos = piece_pos(n - 1, gn);
                    if (pos < 0) return;
                    gs[n - 1] = gn;
                    Complex term = 1.0;
                    for (int t = 0; t < n; ++t) {
                        Elem kt = ks[t], kt1 = ks[(t + 1) % n];
                        if (G.mul(G.mul(kt, gs[t]), G.inv(kt1)) != gs[t]) return;
                        int pp = piece_pos(t, gs[t]);
                        Elem u = parts[t].u[pp];
                        Elem w = G.mul(G.mul(G.inv(u), kt), u);
                        int li = parts[t].stab.from_parent[w];
                        if (li < 0) return;
                        term *= parts[t].ct.rows[parts[t].irrep][li];
                    }
                    total += term;
                    return;
                }
                for (Elem g : parts[j].elems) {
                    gs[j] = g;
                    loop_g(j + 1, G.mul(prod, g));
                }
            };
            loop_g(0, 0);
            return;
        }
        for (Elem k : chain[i].left.elems) {
            ks[i] = k;
            loop_k(i + 1);
        }
    };
    loop_k(0);
    double denom = 1.0;
    for (int i = 0; i < n; ++i) denom *= chain[i].left.order();
    double val = total.real() / denom;
    if (std::abs(total.imag() / denom) > 1e-8 || std::abs(val - std::round(val)) > 1e-8)
        throw std::runtime_error("defect_fusion_degeneracy: non-integral dimension");
    return llround(val);
}

}  // namespace qdlab
