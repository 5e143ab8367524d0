#pragma once

// Character tables by the class-algebra eigenvector (Burnside-Dixon) method.
//
// The class sums C_i span the center of the group algebra; their action
// matrices commute and share eigenvectors whose entries are proportional to
// the irreducible character values. A random real combination of the action
// matrices separates the eigenspaces with probability 1; values are then
// normalized with row orthogonality and snapped to nearby sums of roots of
// unity where possible.

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "qdlab/group.hpp"

namespace qdlab {

struct CharacterTable {
    // rows[r][g] = value of irrep r at group element g; row 0 is trivial.
    std::vector<std::vector<Complex>> rows;
    std::vector<int> dims;
    std::vector<ConjugacyClass> classes;

    int irrep_count() const { return static_cast<int>(rows.size()); }
};

namespace detail {

// Snap x to p/q * (sum of up to two roots of unity) style algebraic values:
// in practice all catalog groups have character values that are sums of roots
// of unity divided by 1, so we test the lattice z = sum_{j} c_j w^j over small
// cyclotomic orders.
inline Complex snap_algebraic(Complex x, double tol = 1e-6) {
    // integers and half-integers with sqrt(k) imaginary parts cover the
    // catalog; try small cyclotomics first.
    static const int orders[] = {1, 2, 3, 4, 5, 6, 8, 10, 12};
    for (int n : orders) {
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                for (int s : {0, 1, -1, 2, -2}) {
                    Complex w1 = std::polar(1.0, 2 * M_PI * a / n);
                    Complex w2 = std::polar(1.0, 2 * M_PI * b / n);
                    Complex cand = (s == 0) ? w1 + w2 : w1 + double(s) * w2;
                    if (std::abs(x - cand) < tol) return cand;
                    if (std::abs(x - w1) < tol) return w1;
                }
            }
        }
        Complex zero(0, 0);
        if (std::abs(x - zero) < tol) return zero;
    }
    return x;
}

}  // namespace detail

inline CharacterTable character_table(const FiniteGroup& G, int order_cap = 256) {
    if (G.order() > order_cap)
        throw std::runtime_error("character_table: group order " + std::to_string(G.order()) +
                                 " exceeds cap " + std::to_string(order_cap) +
                                 "; supply an explicit table instead");
    auto cls = conjugacy_classes(G);
    const int k = static_cast<int>(cls.size());
    std::vector<int> cls_of(G.order());
    for (int i = 0; i < k; ++i)
        for (Elem x : cls[i].elems) cls_of[x] = i;

    // class multiplication coefficients a_{ijl}: C_i C_j = sum_l a_{ijl} C_l
    std::vector<Eigen::MatrixXd> action(k, Eigen::MatrixXd::Zero(k, k));
    for (int i = 0; i < k; ++i) {
        Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(k, k);
        for (Elem x : cls[i].elems)
            for (int j = 0; j < k; ++j)
                for (Elem y : cls[j].elems) counts(cls_of[G.mul(x, y)], j) += 1.0;
        for (int l = 0; l < k; ++l)
            for (int j = 0; j < k; ++j) action[i](l, j) = counts(l, j) / double(cls[l].elems.size());
    }

    // Deterministic random combination; retry with a new seed if eigenvalues
    // collide (then eigenvectors may mix degenerate irreps).
    CharacterTable out;
    out.classes = cls;
    std::mt19937_64 rng(0x51a7eb01dULL);
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::normal_distribution<double> gauss;
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) M += gauss(rng) * action[i];
        Eigen::EigenSolver<Eigen::MatrixXd> es(M);
        // check eigenvalue separation
        bool ok = true;
        for (int a = 0; a < k && ok; ++a)
            for (int b = a + 1; b < k; ++b)
                if (std::abs(es.eigenvalues()(a) - es.eigenvalues()(b)) < 1e-6) { ok = false; break; }
        if (!ok) continue;

        int id_cls = cls_of[0];
        out.rows.clear();
        out.dims.clear();
        bool valid = true;
        for (int c = 0; c < k && valid; ++c) {
            Eigen::VectorXcd v = es.eigenvectors().col(c).conjugate();
            if (std::abs(v(id_cls)) < 1e-12) { valid = false; break; }
            Eigen::VectorXcd u = v / v(id_cls);  // u_l = chi_l / d
            double s = 0;
            for (int l = 0; l < k; ++l) s += cls[l].elems.size() * std::norm(u(l));
            double d = std::sqrt(G.order() / s);
            std::vector<Complex> row(G.order());
            for (Elem g = 0; g < G.order(); ++g)
                row[g] = detail::snap_algebraic(d * u(cls_of[g]));
            double dim = row[0].real();
            if (std::abs(dim - std::round(dim)) > 1e-6 || std::round(dim) < 1) { valid = false; break; }
            out.dims.push_back(static_cast<int>(std::round(dim)));
            out.rows.push_back(std::move(row));
        }
        if (!valid) continue;

        // canonical order: trivial first, then (dim, lexicographic values over
        // classes in canonical class order)
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        auto lex_key = [&](int r) {
            std::vector<std::pair<long long, long long>> key;
            for (int l = 0; l < k; ++l) {
                Complex v = out.rows[r][cls[l].rep];
                key.emplace_back(llround(v.real() * 1e6), llround(v.imag() * 1e6));
            }
            return key;
        };
        std::sort(perm.begin(), perm.end(), [&](int a, int b) {
            bool ta = std::all_of(out.rows[a].begin(), out.rows[a].end(),
                                  [](Complex v) { return std::abs(v - 1.0) < 1e-8; });
            bool tb = std::all_of(out.rows[b].begin(), out.rows[b].end(),
                                  [](Complex v) { return std::abs(v - 1.0) < 1e-8; });
            if (ta != tb) return ta;
            if (out.dims[a] != out.dims[b]) return out.dims[a] < out.dims[b];
            return lex_key(a) < lex_key(b);
        });
        CharacterTable sorted;
        sorted.classes = out.classes;
        for (int r : perm) {
            sorted.rows.push_back(out.rows[r]);
            sorted.dims.push_back(out.dims[r]);
        }
        // verify orthogonality before accepting
        double worst = 0;
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                Complex ip = 0;
                for (Elem g = 0; g < G.order(); ++g)
                    ip += sorted.rows[a][g] * std::conj(sorted.rows[b][g]);
                ip /= double(G.order());
                worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
            }
        long long sumsq = 0;
        for (int d : sorted.dims) sumsq += (long long)d * d;
        if (worst < 1e-9 && sumsq == G.order()) return sorted;
    }
    throw std::runtime_error("character_table: eigenvector method failed to converge");
}

// Builds the group formed by a subgroup's elements, keeping an index map back
// into the parent.
struct SubgroupGroup {
    FiniteGroup group;
    std::vector<Elem> to_parent;         // local index -> parent element
    std::vector<int> from_parent;        // parent element -> local index or -1
};

inline SubgroupGroup subgroup_as_group(const FiniteGroup& G, const Subgroup& K,
                                       const std::string& name = "") {
    SubgroupGroup s;
    s.to_parent = K.elems;
    s.from_parent.assign(G.order(), -1);
    for (size_t i = 0; i < K.elems.size(); ++i) s.from_parent[K.elems[i]] = static_cast<int>(i);
    const int n = static_cast<int>(K.elems.size());
    std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int m = s.from_parent[G.mul(K.elems[a], K.elems[b])];
            if (m < 0) throw std::invalid_argument("subgroup_as_group: set not closed");
            t[a][b] = m;
        }
    s.group = FiniteGroup(std::move(t), name.empty() ? "sub" : name);
    return s;
}

// Multiplicities of H-irreps in the restriction of a G-character to H <= G.
// chi is indexed by elements of G.
inline std::vector<int> restriction_multiplicities(const FiniteGroup& G,
                                                   const std::vector<Complex>& chi,
                                                   const Subgroup& H) {
    require_subgroup(G, H);
    auto sub = subgroup_as_group(G, H);
    auto ct = character_table(sub.group);
    std::vector<int> mult(ct.irrep_count());
    for (int r = 0; r < ct.irrep_count(); ++r) {
        Complex ip = 0;
        for (int i = 0; i < sub.group.order(); ++i)
            ip += chi[sub.to_parent[i]] * std::conj(ct.rows[r][i]);
        ip /= double(sub.group.order());
        double m = ip.real();
        if (std::abs(ip.imag()) > 1e-8 || std::abs(m - std::round(m)) > 1e-8 || std::round(m) < -0.1)
            throw std::runtime_error("restriction_multiplicities: non-integral multiplicity");
        mult[r] = static_cast<int>(std::round(m));
    }
    return mult;
}

}  // namespace qdlab
