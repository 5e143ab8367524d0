#pragma once

// The boundary local-operator algebra Z(G,1,K,1) with its quasi-Hopf
// structure, and a numeric verifier for the axioms.
//
// Basis elements are pairs (left coset hK, k in K); multiplication is
//   Z^{(h1K,k1)} Z^{(h2K,k2)} = delta_{h1K, k1 h2K} Z^{(h1K, k1 k2)}.
// The coset transversal R picks the minimal element per coset, and every
// g factors uniquely as g = r(g) {g}^{-1} with {g} in K.

#include <array>
#include <map>

#include "qdlab/group.hpp"

namespace qdlab {

class ZAlgebra {
public:
    ZAlgebra(const FiniteGroup& G, const Subgroup& K) : G_(G), K_(K) {
        require_subgroup(G, K);
        cosets_ = left_cosets(G, K);
        kidx_.assign(G.order(), -1);
        for (size_t i = 0; i < K.elems.size(); ++i) kidx_[K.elems[i]] = static_cast<int>(i);
        nc_ = cosets_.count();
        nk_ = K.order();
        pick_transversal();
    }

    int dim() const { return nc_ * nk_; }
    int coset_count() const { return nc_; }
    const FiniteGroup& group() const { return G_; }
    const Subgroup& subgroup() const { return K_; }

    int basis_index(int coset, Elem k) const { return coset * nk_ + kidx_[k]; }
    std::pair<int, Elem> basis_pair(int b) const { return {b / nk_, K_.elems[b % nk_]}; }

    // transversal bookkeeping
    Elem coset_rep(int c) const { return reps_[c]; }
    int coset_of(Elem g) const { return cosets_.coset_of[g]; }
    Elem r_of(Elem g) const { return reps_[cosets_.coset_of[g]]; }
    Elem brace(Elem g) const { return G_.mul(G_.inv(g), r_of(g)); }  // {g} = g^-1 r(g)
    bool transversal_is_complement() const { return complement_; }

    // product of basis elements; returns -1 if the delta kills it
    int mul_basis(int b1, int b2) const {
        auto [c1, k1] = basis_pair(b1);
        auto [c2, k2] = basis_pair(b2);
        if (coset_of(G_.mul(k1, coset_rep(c2))) != c1) return -1;
        return basis_index(c1, G_.mul(k1, k2));
    }

    // Delta(Z^{(hK,k)}) = sum_{h1 in R} Z^{(r(h1^-1 h)K, {k^-1 h1})} (x) Z^{(h1K,k)}
    std::vector<std::pair<int, int>> comul_basis(int b) const {
        auto [c, k] = basis_pair(b);
        Elem h = coset_rep(c);
        std::vector<std::pair<int, int>> out;
        out.reserve(nc_);
        for (int c1 = 0; c1 < nc_; ++c1) {
            Elem h1 = coset_rep(c1);
            int left = coset_of(G_.mul(G_.inv(h1), h));
            Elem kk = brace(G_.mul(G_.inv(k), h1));
            out.emplace_back(basis_index(left, kk), basis_index(c1, k));
        }
        return out;
    }

    double counit(int b) const { return b / nk_ == coset_of(0) ? 1.0 : 0.0; }

    // S(Z^{(hK,k)}) = Z^{(r(r(k^-1 h)^-1)K, {k^-1 h}^-1)}
    int antipode_basis(int b) const {
        auto [c, k] = basis_pair(b);
        Elem h = coset_rep(c);
        Elem t = G_.mul(G_.inv(k), h);
        Elem a = r_of(G_.inv(r_of(t)));
        Elem kk = G_.inv(brace(t));
        return basis_index(coset_of(a), kk);
    }

    std::vector<Complex> unit() const {
        std::vector<Complex> v(dim(), 0.0);
        for (int c = 0; c < nc_; ++c) v[basis_index(c, 0)] = 1.0;
        return v;
    }

    std::vector<Complex> mul(const std::vector<Complex>& x, const std::vector<Complex>& y) const {
        std::vector<Complex> out(dim(), 0.0);
        for (int b1 = 0; b1 < dim(); ++b1) {
            if (x[b1] == Complex(0)) continue;
            for (int b2 = 0; b2 < dim(); ++b2) {
                if (y[b2] == Complex(0)) continue;
                int b = mul_basis(b1, b2);
                if (b >= 0) out[b] += x[b1] * y[b2];
            }
        }
        return out;
    }

    // Drinfeld associator Phi = sum_{h1,h2,h3 in R}
    //   Z^{(h1K,1)} (x) Z^{(h2K,1)} (x) Z^{(h3K,{h1 h2})}, and its inverse
    // (same sum with {h1 h2}^{-1}).
    std::map<std::array<int, 3>, Complex> associator(bool inverse = false) const {
        std::map<std::array<int, 3>, Complex> out;
        for (int c1 = 0; c1 < nc_; ++c1)
            for (int c2 = 0; c2 < nc_; ++c2) {
                Elem kk = brace(G_.mul(coset_rep(c1), coset_rep(c2)));
                if (inverse) kk = G_.inv(kk);
                for (int c3 = 0; c3 < nc_; ++c3) {
                    std::array<int, 3> key{basis_index(c1, 0), basis_index(c2, 0),
                                           basis_index(c3, kk)};
                    out[key] += 1.0;
                }
            }
        return out;
    }

private:
    // Transversal choice matters: the antipode and associator formulas close
    // on a subgroup complement (exact factorization G = R K). Search for the
    // lexicographically least complement; fall back to minimal coset
    // representatives when none exists.
    void pick_transversal() {
        reps_ = cosets_.reps;
        complement_ = false;
        if (nc_ == 1 || nk_ == 1) { complement_ = true; return; }  // R={1} or R=G
        std::vector<Elem> best;
        auto consider = [&](const Subgroup& H) {
            if (H.order() != nc_) return;
            // complement: H ∩ K = {1} and H meets every coset once
            std::vector<int> hit(nc_, 0);
            for (Elem h : H.elems) {
                if (h != 0 && K_.contains(h)) return;
                if (hit[cosets_.coset_of[h]]++) return;
            }
            if (best.empty() || H.elems < best) best = H.elems;
        };
        for (Elem a = 0; a < G_.order(); ++a) {
            consider(subgroup_from_generators(G_, {a}));
            for (Elem b = a + 1; b < G_.order(); ++b)
                consider(subgroup_from_generators(G_, {a, b}));
        }
        if (!best.empty()) {
            complement_ = true;
            for (Elem h : best) reps_[cosets_.coset_of[h]] = h;
        }
    }

    FiniteGroup G_;
    Subgroup K_;
    CosetDecomposition cosets_;
    std::vector<Elem> reps_;
    std::vector<int> kidx_;
    int nc_ = 0, nk_ = 0;
    bool complement_ = false;
};

// multiply a single basis element by a vector (left/right)
inline std::vector<Complex> z_mul_bl(const ZAlgebra& Z, int b, const std::vector<Complex>& v) {
    std::vector<Complex> x(Z.dim(), 0.0);
    x[b] = 1.0;
    return Z.mul(x, v);
}
inline std::vector<Complex> z_mul_br(const ZAlgebra& Z, const std::vector<Complex>& v, int b) {
    std::vector<Complex> x(Z.dim(), 0.0);
    x[b] = 1.0;
    return Z.mul(v, x);
}

struct QuasiHopfReport {
    double associativity = 0;
    double unit = 0;
    double counit = 0;
    double coassociativity = 0;   // with the associator conjugation
    double pentagon = 0;          // cocycle identity for Phi
    double antipode_left = 0;     // sum S(a1) alpha a2 = eps(a) alpha
    double antipode_right = 0;    // sum a1 beta S(a2) = eps(a) beta
    double zigzag1 = 0;           // sum x beta S(y) alpha z over Phi
    double zigzag2 = 0;           // sum S(x) alpha y beta S(z) over Phi^-1
    double antihomomorphism = 0;  // S(xy) = S(y) S(x)
    double phi_invertible = 0;    // Phi Phi^-1 = 1 and Phi^-1 Phi = 1
    double phi_counit = 0;        // (1 x eps x 1)(Phi) = 1 x 1
    double phi_trivial_when_full = -1;  // only when K = G

    double max_residual() const {
        double m = 0;
        for (double v : {associativity, unit, counit, coassociativity, pentagon, antipode_left,
                         antipode_right, zigzag1, zigzag2, antihomomorphism, phi_invertible,
                         phi_counit})
            m = std::max(m, v);
        if (phi_trivial_when_full >= 0) m = std::max(m, phi_trivial_when_full);
        return m;
    }
    bool pass(double tol = 1e-9) const { return max_residual() < tol; }
};

namespace detail {

using Tensor3 = std::map<std::array<int, 3>, Complex>;
using Tensor4 = std::map<std::array<int, 4>, Complex>;

inline Tensor3 t3_mul(const ZAlgebra& Z, const Tensor3& X, const Tensor3& Y) {
    Tensor3 out;
    for (const auto& [ka, ca] : X)
        for (const auto& [kb, cb] : Y) {
            int m0 = Z.mul_basis(ka[0], kb[0]);
            int m1 = Z.mul_basis(ka[1], kb[1]);
            int m2 = Z.mul_basis(ka[2], kb[2]);
            if (m0 < 0 || m1 < 0 || m2 < 0) continue;
            out[{m0, m1, m2}] += ca * cb;
        }
    return out;
}

inline Tensor4 t4_mul(const ZAlgebra& Z, const Tensor4& X, const Tensor4& Y) {
    Tensor4 out;
    for (const auto& [ka, ca] : X)
        for (const auto& [kb, cb] : Y) {
            int m0 = Z.mul_basis(ka[0], kb[0]);
            int m1 = Z.mul_basis(ka[1], kb[1]);
            int m2 = Z.mul_basis(ka[2], kb[2]);
            int m3 = Z.mul_basis(ka[3], kb[3]);
            if (m0 < 0 || m1 < 0 || m2 < 0 || m3 < 0) continue;
            out[{m0, m1, m2, m3}] += ca * cb;
        }
    return out;
}

template <typename M>
double t_diff(const M& A, const M& B) {
    double worst = 0;
    for (const auto& [k, v] : A) {
        auto it = B.find(k);
        worst = std::max(worst, std::abs(v - (it == B.end() ? Complex(0) : it->second)));
    }
    for (const auto& [k, v] : B)
        if (!A.count(k)) worst = std::max(worst, std::abs(v));
    return worst;
}

// comultiply slot `which` of a 3-tensor, producing a 4-tensor
inline Tensor4 t3_comul_slot(const ZAlgebra& Z, const Tensor3& X, int which) {
    Tensor4 out;
    for (const auto& [k, c] : X)
        for (auto [l, r] : Z.comul_basis(k[which])) {
            std::array<int, 4> key;
            int w = 0;
            for (int i = 0; i < 3; ++i) {
                if (i == which) { key[w++] = l; key[w++] = r; }
                else key[w++] = k[i];
            }
            out[key] += c;
        }
    return out;
}

}  // namespace detail

// Verifies all quasi-Hopf axioms numerically with alpha = beta = 1 and the
// associator above. Always returns a full report.
inline QuasiHopfReport verify_quasi_hopf(const FiniteGroup& G, const Subgroup& K) {
    ZAlgebra Z(G, K);
    const int n = Z.dim();
    if (n > 1000) throw std::runtime_error("verify_quasi_hopf: dimension cap exceeded");
    QuasiHopfReport rep;
    using detail::Tensor3;
    using detail::Tensor4;

    // associativity + unit on basis triples
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            int ab = Z.mul_basis(a, b);
            for (int c = 0; c < n; ++c) {
                int bc = Z.mul_basis(b, c);
                int l = ab < 0 ? -1 : Z.mul_basis(ab, c);
                int r = bc < 0 ? -1 : Z.mul_basis(a, bc);
                if (l != r) rep.associativity = std::max(rep.associativity, 1.0);
            }
        }
    }
    auto one = Z.unit();
    for (int b = 0; b < n; ++b) {
        std::vector<Complex> e(n, 0.0);
        e[b] = 1.0;
        auto l = Z.mul(one, e);
        auto r = Z.mul(e, one);
        for (int i = 0; i < n; ++i) {
            rep.unit = std::max({rep.unit, std::abs(l[i] - e[i]), std::abs(r[i] - e[i])});
        }
    }

    // counit
    for (int b = 0; b < n; ++b) {
        std::vector<Complex> accL(n, 0.0), accR(n, 0.0);
        for (auto [l, r] : Z.comul_basis(b)) {
            accL[r] += Z.counit(l);
            accR[l] += Z.counit(r);
        }
        for (int i = 0; i < n; ++i) {
            double want = (i == b) ? 1.0 : 0.0;
            rep.counit = std::max({rep.counit, std::abs(accL[i] - want), std::abs(accR[i] - want)});
        }
    }

    Tensor3 Phi = Z.associator(false), Phin = Z.associator(true);

    // Phi invertibility and counit property
    Tensor3 U;
    for (int c1 = 0; c1 < Z.coset_count(); ++c1)
        for (int c2 = 0; c2 < Z.coset_count(); ++c2)
            for (int c3 = 0; c3 < Z.coset_count(); ++c3)
                U[{Z.basis_index(c1, 0), Z.basis_index(c2, 0), Z.basis_index(c3, 0)}] = 1.0;
    rep.phi_invertible = std::max(detail::t_diff(detail::t3_mul(Z, Phi, Phin), U),
                                  detail::t_diff(detail::t3_mul(Z, Phin, Phi), U));
    {
        // (1 x eps x 1)(Phi) = 1 x 1
        std::map<std::array<int, 2>, Complex> got, want;
        for (const auto& [k, v] : Phi)
            if (Z.counit(k[1]) != 0.0) got[{k[0], k[2]}] += v * Z.counit(k[1]);
        for (int c1 = 0; c1 < Z.coset_count(); ++c1)
            for (int c3 = 0; c3 < Z.coset_count(); ++c3)
                want[{Z.basis_index(c1, 0), Z.basis_index(c3, 0)}] = 1.0;
        rep.phi_counit = detail::t_diff(got, want);
    }

    // coassociativity: (1 x Delta)Delta a = Phi (Delta x 1)Delta a Phi^-1
    for (int b = 0; b < n; ++b) {
        Tensor3 lhs, mid;
        for (auto [l, r] : Z.comul_basis(b)) {
            for (auto [rl, rr] : Z.comul_basis(r)) lhs[{l, rl, rr}] += 1.0;
            for (auto [ll, lr] : Z.comul_basis(l)) mid[{ll, lr, r}] += 1.0;
        }
        Tensor3 rhs = detail::t3_mul(Z, detail::t3_mul(Z, Phi, mid), Phin);
        rep.coassociativity = std::max(rep.coassociativity, detail::t_diff(lhs, rhs));
    }

    // pentagon: (1x1xDelta)(Phi) (Deltax1x1)(Phi)
    //         = (1 x Phi) (1xDeltax1)(Phi) (Phi x 1)
    {
        Tensor4 L = detail::t4_mul(Z, detail::t3_comul_slot(Z, Phi, 2),
                                   detail::t3_comul_slot(Z, Phi, 0));
        Tensor4 onePhi, Phione;
        for (const auto& [k, v] : Phi)
            for (int c = 0; c < Z.coset_count(); ++c) {
                onePhi[{Z.basis_index(c, 0), k[0], k[1], k[2]}] += v;
                Phione[{k[0], k[1], k[2], Z.basis_index(c, 0)}] += v;
            }
        Tensor4 R = detail::t4_mul(Z, detail::t4_mul(Z, onePhi, detail::t3_comul_slot(Z, Phi, 1)),
                                   Phione);
        rep.pentagon = detail::t_diff(L, R);
    }

    // antipode axioms with alpha = beta = 1
    for (int b = 0; b < n; ++b) {
        std::vector<Complex> acc1(n, 0.0), acc2(n, 0.0);
        for (auto [l, r] : Z.comul_basis(b)) {
            int sl = Z.antipode_basis(l);
            int m = Z.mul_basis(sl, r);
            if (m >= 0) acc1[m] += 1.0;
            int sr = Z.antipode_basis(r);
            int m2 = Z.mul_basis(l, sr);
            if (m2 >= 0) acc2[m2] += 1.0;
        }
        double eps = Z.counit(b);
        for (int i = 0; i < n; ++i) {
            Complex want = eps * one[i];
            rep.antipode_left = std::max(rep.antipode_left, std::abs(acc1[i] - want));
            rep.antipode_right = std::max(rep.antipode_right, std::abs(acc2[i] - want));
        }
    }

    // zigzags
    {
        std::vector<Complex> acc(n, 0.0);
        for (const auto& [k, v] : Phi) {
            int sy = Z.antipode_basis(k[1]);
            int m = Z.mul_basis(k[0], sy);
            if (m < 0) continue;
            m = Z.mul_basis(m, k[2]);
            if (m < 0) continue;
            acc[m] += v;
        }
        for (int i = 0; i < n; ++i) rep.zigzag1 = std::max(rep.zigzag1, std::abs(acc[i] - one[i]));
    }
    {
        std::vector<Complex> acc(n, 0.0);
        for (const auto& [k, v] : Phin) {
            int sx = Z.antipode_basis(k[0]);
            int sz = Z.antipode_basis(k[2]);
            int m = Z.mul_basis(sx, k[1]);
            if (m < 0) continue;
            m = Z.mul_basis(m, sz);
            if (m < 0) continue;
            acc[m] += v;
        }
        for (int i = 0; i < n; ++i) rep.zigzag2 = std::max(rep.zigzag2, std::abs(acc[i] - one[i]));
    }

    // antihomomorphism
    for (int b1 = 0; b1 < n; ++b1)
        for (int b2 = 0; b2 < n; ++b2) {
            int m = Z.mul_basis(b1, b2);
            int lhs = m < 0 ? -1 : Z.antipode_basis(m);
            int rhs = Z.mul_basis(Z.antipode_basis(b2), Z.antipode_basis(b1));
            if (lhs != rhs) rep.antihomomorphism = std::max(rep.antihomomorphism, 1.0);
        }

    // K = G: Phi must reduce to the unit tensor
    if (K.order() == G.order()) rep.phi_trivial_when_full = detail::t_diff(Phi, U);

    return rep;
}

}  // namespace qdlab
