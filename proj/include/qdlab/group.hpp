#pragma once

// Finite group arithmetic on dense element indices.
//
// Groups are represented by their full multiplication table. Element 0 is
// always the identity. All higher-level structure (conjugacy classes, cosets,
// double cosets) is computed eagerly enough to be cached by the callers that
// need it, and every ordering is canonical so that repeated runs produce
// identical output.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdlab {

using Elem = int;
using Complex = std::complex<double>;

class FiniteGroup {
public:
    FiniteGroup() = default;

    // Takes a row-major multiplication table; validates group axioms.
    FiniteGroup(std::vector<std::vector<Elem>> table, std::string name)
        : mul_(std::move(table)), name_(std::move(name)) {
        order_ = static_cast<int>(mul_.size());
        if (order_ == 0) throw std::invalid_argument("empty multiplication table");
        for (const auto& row : mul_) {
            if (static_cast<int>(row.size()) != order_)
                throw std::invalid_argument("multiplication table is not square");
            for (Elem x : row)
                if (x < 0 || x >= order_)
                    throw std::invalid_argument("table entry out of range");
        }
        if (mul_[0][0] != 0) throw std::invalid_argument("element 0 must be the identity");
        for (Elem g = 0; g < order_; ++g)
            if (mul_[0][g] != g || mul_[g][0] != g)
                throw std::invalid_argument("element 0 is not a two-sided identity");
        inv_.assign(order_, -1);
        for (Elem g = 0; g < order_; ++g) {
            for (Elem h = 0; h < order_; ++h) {
                if (mul_[g][h] == 0) {
                    if (mul_[h][g] != 0)
                        throw std::invalid_argument("one-sided inverse at element " + std::to_string(g));
                    inv_[g] = h;
                    break;
                }
            }
            if (inv_[g] < 0) throw std::invalid_argument("no inverse for element " + std::to_string(g));
        }
        check_associativity();
    }

    int order() const { return order_; }
    const std::string& name() const { return name_; }
    Elem mul(Elem a, Elem b) const { return mul_[a][b]; }
    Elem inv(Elem a) const { return inv_[a]; }
    Elem conj(Elem g, Elem x) const { return mul_[mul_[g][x]][inv_[g]]; }  // g x g^-1
    const std::vector<std::vector<Elem>>& table() const { return mul_; }

    bool is_abelian() const {
        for (Elem a = 0; a < order_; ++a)
            for (Elem b = a + 1; b < order_; ++b)
                if (mul_[a][b] != mul_[b][a]) return false;
        return true;
    }

private:
    void check_associativity() const {
        // Full triple loop up to order 64, sampled stride above that.
        const int n = order_;
        auto check = [&](Elem a, Elem b, Elem c) {
            if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
                throw std::invalid_argument("non-associative triple (" + std::to_string(a) + "," +
                                            std::to_string(b) + "," + std::to_string(c) + ")");
        };
        if (n <= 64) {
            for (Elem a = 0; a < n; ++a)
                for (Elem b = 0; b < n; ++b)
                    for (Elem c = 0; c < n; ++c) check(a, b, c);
        } else {
            uint64_t state = 0x9e3779b97f4a7c15ull;
            auto next = [&]() {
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                return state;
            };
            for (int t = 0; t < 200000; ++t)
                check(Elem(next() % n), Elem(next() % n), Elem(next() % n));
        }
    }

    int order_ = 0;
    std::vector<std::vector<Elem>> mul_;
    std::vector<Elem> inv_;
    std::string name_;
};

// ---------------------------------------------------------------------------
// Builders. The catalog fixes element orderings once and for all.

inline FiniteGroup cyclic_group(int n) {
    if (n < 1) throw std::invalid_argument("cyclic(n) needs n >= 1");
    std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup(std::move(t), "Z" + std::to_string(n));
}

// Dihedral group of order 2n: indices 0..n-1 are rotations r^i, n..2n-1 are
// reflections s r^i, with s r^i s = r^-i.
inline FiniteGroup dihedral_group(int n) {
    if (n < 1) throw std::invalid_argument("dihedral(n) needs n >= 1");
    const int N = 2 * n;
    auto id = [&](bool refl, int i) { return (refl ? n : 0) + ((i % n) + n) % n; };
    std::vector<std::vector<Elem>> t(N, std::vector<Elem>(N));
    for (int a = 0; a < N; ++a) {
        bool ra = a >= n; int ia = ra ? a - n : a;
        for (int b = 0; b < N; ++b) {
            bool rb = b >= n; int ib = rb ? b - n : b;
            // (s^ra r^ia)(s^rb r^ib) = s^(ra^rb) r^(ib + (-1)^rb ia)
            bool rr = ra != rb;
            int ii = rb ? ib - ia : ib + ia;
            t[a][b] = id(rr, ii);
        }
    }
    return FiniteGroup(std::move(t), "D" + std::to_string(n));
}

// Symmetric group on n letters, n <= 5; elements are permutations in
// lexicographic order (identity first).
inline FiniteGroup symmetric_group(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("symmetric(n) supported for 1 <= n <= 5");
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(p); while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> idx;
    for (size_t i = 0; i < perms.size(); ++i) idx[perms[i]] = static_cast<int>(i);
    const int N = static_cast<int>(perms.size());
    std::vector<std::vector<Elem>> t(N, std::vector<Elem>(N));
    std::vector<int> c(n);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
            t[a][b] = idx[c];
        }
    return FiniteGroup(std::move(t), "S" + std::to_string(n));
}

inline FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
    const int na = A.order(), nb = B.order(), N = na * nb;
    std::vector<std::vector<Elem>> t(N, std::vector<Elem>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            t[a][b] = A.mul(a / nb, b / nb) * nb + B.mul(a % nb, b % nb);
    return FiniteGroup(std::move(t), A.name() + "x" + B.name());
}

// ---------------------------------------------------------------------------
// Subgroups: sorted element sets, closed under multiplication and inverse.

struct Subgroup {
    std::vector<Elem> elems;  // sorted, contains 0

    bool contains(Elem g) const {
        return std::binary_search(elems.begin(), elems.end(), g);
    }
    int order() const { return static_cast<int>(elems.size()); }
};

inline Subgroup subgroup_from_generators(const FiniteGroup& G, const std::vector<Elem>& gens) {
    std::set<Elem> s{0};
    std::vector<Elem> frontier(gens.begin(), gens.end());
    while (!frontier.empty()) {
        Elem g = frontier.back();
        frontier.pop_back();
        if (g < 0 || g >= G.order()) throw std::invalid_argument("generator out of range");
        if (s.count(g)) continue;
        s.insert(g);
        std::vector<Elem> cur(s.begin(), s.end());
        for (Elem h : cur) {
            frontier.push_back(G.mul(g, h));
            frontier.push_back(G.mul(h, g));
        }
        frontier.push_back(G.inv(g));
    }
    return Subgroup{std::vector<Elem>(s.begin(), s.end())};
}

inline Subgroup trivial_subgroup() { return Subgroup{{0}}; }

inline Subgroup full_subgroup(const FiniteGroup& G) {
    std::vector<Elem> e(G.order());
    std::iota(e.begin(), e.end(), 0);
    return Subgroup{std::move(e)};
}

inline void require_subgroup(const FiniteGroup& G, const Subgroup& K) {
    if (K.elems.empty() || K.elems[0] != 0)
        throw std::invalid_argument("subgroup must contain the identity");
    for (Elem a : K.elems) {
        if (a < 0 || a >= G.order()) throw std::invalid_argument("subgroup element out of range");
        if (!K.contains(G.inv(a))) throw std::invalid_argument("subgroup not closed under inverse");
        for (Elem b : K.elems)
            if (!K.contains(G.mul(a, b))) throw std::invalid_argument("subgroup not closed under multiplication");
    }
}

// Canonical representative of the conjugation orbit of K: the conjugate
// subgroup with lexicographically least element set.
inline Subgroup canonicalize_conjugate(const FiniteGroup& G, const Subgroup& K) {
    std::vector<Elem> best = K.elems;
    for (Elem g = 0; g < G.order(); ++g) {
        std::vector<Elem> c;
        c.reserve(K.elems.size());
        for (Elem k : K.elems) c.push_back(G.conj(g, k));
        std::sort(c.begin(), c.end());
        if (c < best) best = std::move(c);
    }
    return Subgroup{std::move(best)};
}

// ---------------------------------------------------------------------------
// Conjugacy classes

struct ConjugacyClass {
    Elem rep = 0;                  // minimal index in the class
    std::vector<Elem> elems;       // sorted
    Subgroup centralizer;          // E(rep)
    std::vector<Elem> transversal; // p_i with elems[i] = p_i rep p_i^-1
};

inline std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& G) {
    std::vector<bool> seen(G.order(), false);
    std::vector<ConjugacyClass> out;
    for (Elem g = 0; g < G.order(); ++g) {
        if (seen[g]) continue;
        std::set<Elem> cl;
        for (Elem h = 0; h < G.order(); ++h) cl.insert(G.conj(h, g));
        ConjugacyClass c;
        c.rep = *cl.begin();
        c.elems.assign(cl.begin(), cl.end());
        for (Elem x : c.elems) seen[x] = true;
        std::vector<Elem> cent;
        for (Elem h = 0; h < G.order(); ++h)
            if (G.mul(h, c.rep) == G.mul(c.rep, h)) cent.push_back(h);
        c.centralizer = Subgroup{std::move(cent)};
        c.transversal.assign(c.elems.size(), -1);
        for (Elem p = 0; p < G.order(); ++p) {
            Elem x = G.conj(p, c.rep);
            size_t i = std::lower_bound(c.elems.begin(), c.elems.end(), x) - c.elems.begin();
            if (c.transversal[i] < 0) c.transversal[i] = p;
        }
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const ConjugacyClass& a, const ConjugacyClass& b) {
        if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
        return a.rep < b.rep;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Double cosets T in K1\G/K2

struct DoubleCoset {
    Elem rep = 0;                   // minimal index in the coset
    std::vector<Elem> elems;        // sorted
    Subgroup stabilizer;            // K1 ∩ rep K2 rep^-1
    std::vector<Elem> transversal;  // representatives q_i of K1 / stabilizer
};

inline std::vector<DoubleCoset> double_cosets(const FiniteGroup& G, const Subgroup& K1,
                                              const Subgroup& K2) {
    require_subgroup(G, K1);
    require_subgroup(G, K2);
    std::vector<bool> seen(G.order(), false);
    std::vector<DoubleCoset> out;
    for (Elem g = 0; g < G.order(); ++g) {
        if (seen[g]) continue;
        std::set<Elem> T;
        for (Elem a : K1.elems)
            for (Elem b : K2.elems) T.insert(G.mul(G.mul(a, g), b));
        DoubleCoset d;
        d.rep = *T.begin();
        d.elems.assign(T.begin(), T.end());
        for (Elem x : d.elems) seen[x] = true;
        std::vector<Elem> stab;
        for (Elem k : K1.elems)
            if (K2.contains(G.mul(G.mul(G.inv(d.rep), k), d.rep))) stab.push_back(k);
        d.stabilizer = Subgroup{std::move(stab)};
        // left transversal of stabilizer in K1
        std::vector<bool> used(G.order(), false);
        for (Elem q : K1.elems) {
            if (used[q]) continue;
            d.transversal.push_back(q);
            for (Elem s : d.stabilizer.elems) used[G.mul(q, s)] = true;
        }
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end(), [](const DoubleCoset& a, const DoubleCoset& b) {
        if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
        return a.rep < b.rep;
    });
    return out;
}

// Left cosets gK, each sorted; block i carries its minimal representative.
struct CosetDecomposition {
    std::vector<std::vector<Elem>> cosets;  // each sorted; cosets[0] is K itself
    std::vector<int> coset_of;              // element -> coset index
    std::vector<Elem> reps;                 // minimal element per coset

    int count() const { return static_cast<int>(cosets.size()); }
};

inline CosetDecomposition left_cosets(const FiniteGroup& G, const Subgroup& K) {
    CosetDecomposition d;
    d.coset_of.assign(G.order(), -1);
    for (Elem g = 0; g < G.order(); ++g) {
        if (d.coset_of[g] >= 0) continue;
        std::vector<Elem> c;
        c.reserve(K.elems.size());
        for (Elem k : K.elems) c.push_back(G.mul(g, k));
        std::sort(c.begin(), c.end());
        int idx = d.count();
        for (Elem x : c) d.coset_of[x] = idx;
        d.reps.push_back(c.front());
        d.cosets.push_back(std::move(c));
    }
    return d;
}

}  // namespace qdlab
