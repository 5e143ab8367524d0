#pragma once

// M-3j symbols of a gapped boundary: coefficients controlling fuse-then-
// condense of bulk anyon pairs into the vacuum channel of a Lagrangian
// algebra. The nonlinear system (pentagon, braid commutativity) is solved by
// Gauss-Newton with the normalization pins imposed exactly.

#include <functional>
#include <random>

#include <Eigen/Dense>

#include "qdlab/mtc.hpp"

namespace qdlab {

// Solved M-3j symbols. `val` holds the reference normalization used by the
// tunnel formula and the worked examples: entries whose three indices are all
// non-vacuum carry an extra (d_c dimA / d_a d_b)^{1/4} relative to the raw
// solution of the pentagon system (the rescale is a pentagon cocycle, and the
// two conventions agree on every entry touching the vacuum). The
// pentagon/braid residual below refers to the raw system.
struct MSymbolSet {
    std::vector<int> boundary;                  // multiplicity vector over mtc labels
    std::map<std::array<int, 3>, Complex> val;  // (a,b,c) -> M^{ab}_c
    double residual = 0;

    Complex m(int a, int b, int c) const {
        auto it = val.find({a, b, c});
        return it == val.end() ? Complex(0) : it->second;
    }
};

namespace detail {

struct MSystem {
    const MtcData* mtc;
    std::vector<int> boundary;
    std::vector<std::array<int, 3>> triples;       // all admissible condensable triples
    std::map<std::array<int, 3>, int> triple_pos;  // -1 family below
    std::vector<Complex> pinned;                   // NaN marker for free entries
    std::vector<int> free_index;                   // triple -> unknown slot or -1
    int n_free = 0;

    bool condensable(int a) const { return boundary[a] > 0; }

    void build() {
        const MtcData& m = *mtc;
        double dimA = 0;
        for (int a = 0; a < m.count(); ++a) dimA += boundary[a] * m.dims[a];
        for (int a = 0; a < m.count(); ++a) {
            if (!condensable(a)) continue;
            for (int b = 0; b < m.count(); ++b) {
                if (!condensable(b)) continue;
                for (int c = 0; c < m.count(); ++c) {
                    if (!condensable(c) || !m.admissible(a, b, c)) continue;
                    triple_pos[{a, b, c}] = static_cast<int>(triples.size());
                    triples.push_back({a, b, c});
                }
            }
        }
        pinned.resize(triples.size(), Complex(std::nan(""), 0));
        free_index.assign(triples.size(), -1);
        for (size_t t = 0; t < triples.size(); ++t) {
            auto [a, b, c] = triples[t];
            if (a == 0 || b == 0) pinned[t] = 1.0;                       // M^{1a}_a = M^{a1}_a = 1
            else if (c == 0) pinned[t] = 1.0 / std::sqrt(dimA);          // M^{a abar}_1
        }
        for (size_t t = 0; t < triples.size(); ++t)
            if (std::isnan(pinned[t].real())) free_index[t] = n_free++;
    }

    std::vector<Complex> values(const Eigen::VectorXd& x) const {
        std::vector<Complex> v(triples.size());
        for (size_t t = 0; t < triples.size(); ++t)
            v[t] = free_index[t] >= 0
                       ? Complex(x(2 * free_index[t]), x(2 * free_index[t] + 1))
                       : pinned[t];
        return v;
    }

    Complex get(const std::vector<Complex>& v, int a, int b, int c) const {
        auto it = triple_pos.find({a, b, c});
        return it == triple_pos.end() ? Complex(0) : v[it->second];
    }

    // stacked complex residuals of pentagon and braid equations
    std::vector<Complex> residuals(const std::vector<Complex>& v) const {
        const MtcData& m = *mtc;
        std::vector<Complex> out;
        const int n = m.count();
        // pentagon: sum_e M^{ab}_e M^{ec}_d F^{abc}_{d;ef} = M^{bc}_f M^{af}_d
        for (int a = 0; a < n; ++a) {
            if (!condensable(a)) continue;
            for (int b = 0; b < n; ++b) {
                if (!condensable(b)) continue;
                for (int c = 0; c < n; ++c) {
                    if (!condensable(c)) continue;
                    for (int d = 0; d < n; ++d) {
                        if (!condensable(d)) continue;
                        for (int f = 0; f < n; ++f) {
                            if (!condensable(f) || !m.admissible(b, c, f) || !m.admissible(a, f, d))
                                continue;
                            Complex lhs = 0;
                            bool any = false;
                            for (int e = 0; e < n; ++e) {
                                if (!condensable(e) || !m.admissible(a, b, e) || !m.admissible(e, c, d))
                                    continue;
                                lhs += get(v, a, b, e) * get(v, e, c, d) * m.f_symbol(a, b, c, d, e, f);
                                any = true;
                            }
                            Complex rhs = get(v, b, c, f) * get(v, a, f, d);
                            if (any || std::abs(rhs) > 0) out.push_back(lhs - rhs);
                        }
                    }
                }
            }
        }
        // braid: M^{ba}_c R^{ab}_c = M^{ab}_c per admissible condensable triple
        for (const auto& t : triples) {
            auto [a, b, c] = t;
            out.push_back(get(v, b, a, c) * m.r_symbol(a, b, c) - get(v, a, b, c));
        }
        return out;
    }

    double norm2(const Eigen::VectorXd& x) const {
        auto r = residuals(values(x));
        double s = 0;
        for (Complex z : r) s += std::norm(z);
        return s;
    }
};

}  // namespace detail

// canonical gauge: exhaust self-dual sign gauges (gamma_a = +-1 with
// gamma_a gamma_abar = 1 preserved) and keep the lexicographically least
// value list, rounding to 1e-9
inline void canonicalize_gauge(const MtcData& m, MSymbolSet& set) {
    std::vector<int> sign_anyons;
    for (int a = 1; a < m.count(); ++a)
        if (set.boundary[a] > 0 && m.dual[a] == a) sign_anyons.push_back(a);
    if (sign_anyons.size() > 16) return;
    auto key_of = [&](const std::map<std::array<int, 3>, Complex>& vals) {
        std::vector<std::pair<long long, long long>> key;
        for (const auto& [k, v] : vals)
            key.emplace_back(llround(v.imag() * 1e9), llround(v.real() * 1e9));
        return key;
    };
    auto apply = [&](unsigned mask) {
        std::map<std::array<int, 3>, Complex> out;
        auto g = [&](int a) {
            for (size_t i = 0; i < sign_anyons.size(); ++i)
                if (sign_anyons[i] == a) return (mask >> i) & 1u ? -1.0 : 1.0;
            return 1.0;
        };
        for (const auto& [k, v] : set.val) out[k] = g(k[0]) * g(k[1]) * g(k[2]) * v;
        return out;
    };
    // prefer first nonzero a==b entry with nonnegative imaginary part, then
    // nonnegative real part; ties broken by the full lex key (descending so
    // positive-imag wins)
    std::map<std::array<int, 3>, Complex> best = set.val;
    auto better = [&](const std::map<std::array<int, 3>, Complex>& cand,
                      const std::map<std::array<int, 3>, Complex>& cur) {
        for (auto itc = cand.begin(), itb = cur.begin(); itc != cand.end(); ++itc, ++itb) {
            if (itc->first[0] != itc->first[1]) continue;
            long long ic = llround(itc->second.imag() * 1e9), ib = llround(itb->second.imag() * 1e9);
            if (ic != ib) return ic > ib;
            long long rc = llround(itc->second.real() * 1e9), rb = llround(itb->second.real() * 1e9);
            if (rc != rb) return rc > rb;
        }
        return key_of(cand) > key_of(cur);
    };
    for (unsigned mask = 1; mask < (1u << sign_anyons.size()); ++mask) {
        auto cand = apply(mask);
        if (better(cand, best)) best = std::move(cand);
    }
    set.val = std::move(best);
}

inline MSymbolSet solve_m3j(const MtcData& m, const std::vector<int>& boundary,
                            int restarts = 64, int iters = 400) {
    if (!is_lagrangian(m, boundary))
        throw std::invalid_argument("solve_m3j: boundary is not a Lagrangian algebra of " + m.name);
    detail::MSystem sys;
    sys.mtc = &m;
    sys.boundary = boundary;
    sys.build();

    double dimA = 0;
    for (int a = 0; a < m.count(); ++a) dimA += boundary[a] * m.dims[a];
    auto pack_result = [&](const Eigen::VectorXd& x, double res) {
        MSymbolSet set;
        set.boundary = boundary;
        auto v = sys.values(x);
        // cocycle rescale into the reference normalization (see MSymbolSet);
        // (d_c dimA / d_a d_b)^{1/4} maps pentagon solutions to pentagon
        // solutions and leaves every vacuum-touching entry alone
        for (size_t t = 0; t < sys.triples.size(); ++t) {
            auto [a, b, c] = sys.triples[t];
            Complex val = v[t];
            if (a != 0 && b != 0 && c != 0)
                val *= std::pow(m.dims[c] * dimA / (m.dims[a] * m.dims[b]), 0.25);
            set.val[sys.triples[t]] = val;
        }
        set.residual = res;
        canonicalize_gauge(m, set);
        return set;
    };

    std::mt19937_64 rng(0x3a6d1ULL);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd best_x;
    double best_res = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt <= restarts; ++attempt) {
        Eigen::VectorXd x(2 * sys.n_free);
        if (attempt == 0) {
            for (int i = 0; i < sys.n_free; ++i) { x(2 * i) = 1.0; x(2 * i + 1) = 0.0; }
        } else {
            for (int i = 0; i < 2 * sys.n_free; ++i) x(i) = gauss(rng);
        }
        // Gauss-Newton with numeric Jacobian and damping
        double lambda = 1e-3;
        for (int it = 0; it < iters && sys.n_free > 0; ++it) {
            auto v = sys.values(x);
            auto r = sys.residuals(v);
            const int nr = static_cast<int>(r.size());
            Eigen::VectorXd rv(2 * nr);
            for (int i = 0; i < nr; ++i) { rv(2 * i) = r[i].real(); rv(2 * i + 1) = r[i].imag(); }
            double cur = rv.squaredNorm();
            if (cur < 1e-26) break;
            Eigen::MatrixXd J(2 * nr, 2 * sys.n_free);
            const double h = 1e-7;
            for (int j = 0; j < 2 * sys.n_free; ++j) {
                Eigen::VectorXd xp = x;
                xp(j) += h;
                auto rp = sys.residuals(sys.values(xp));
                for (int i = 0; i < nr; ++i) {
                    J(2 * i, j) = (rp[i].real() - r[i].real()) / h;
                    J(2 * i + 1, j) = (rp[i].imag() - r[i].imag()) / h;
                }
            }
            Eigen::MatrixXd A = J.transpose() * J +
                                lambda * Eigen::MatrixXd::Identity(2 * sys.n_free, 2 * sys.n_free);
            Eigen::VectorXd step = A.ldlt().solve(J.transpose() * rv);
            Eigen::VectorXd xn = x - step;
            if (sys.norm2(xn) < cur) {
                x = xn;
                lambda = std::max(lambda * 0.3, 1e-12);
            } else {
                lambda *= 10;
                if (lambda > 1e12) break;
            }
        }
        double res = std::sqrt(sys.norm2(x));
        if (res < best_res) {
            best_res = res;
            best_x = x;
        }
        if (best_res < 1e-11) break;
    }
    if (sys.n_free == 0) {
        Eigen::VectorXd empty(0);
        best_res = std::sqrt(sys.norm2(empty));
        best_x = empty;
    }
    if (!(best_res < 1e-9))
        throw std::runtime_error("solve_m3j: no solution within iteration budget (best residual " +
                                 std::to_string(best_res) + ")");
    return pack_result(best_x, best_res);
}

// True iff setB = gauge-transformed setA with per-anyon unimodular phases
// gamma (gamma_vacuum = 1, gamma_a gamma_abar = 1 so the normalization pins
// survive). Solved by propagation; condensation spaces here are 1-dim.
inline bool gauge_equivalent(const MtcData& m, const MSymbolSet& A, const MSymbolSet& B,
                             double tol = 1e-7) {
    if (A.boundary != B.boundary) return false;
    // same support
    for (const auto& [k, v] : A.val) {
        auto it = B.val.find(k);
        double bv = it == B.val.end() ? 0.0 : std::abs(it->second);
        if ((std::abs(v) < tol) != (bv < tol)) return false;
        if (std::abs(v) > tol && std::abs(std::abs(v) - bv) > tol) return false;  // magnitudes gauge-invariant
    }
    const int n = m.count();
    std::vector<Complex> gamma(n, Complex(0));  // 0 = unknown
    gamma[0] = 1.0;
    // ratio constraints gamma_a gamma_b / gamma_c = B/A on nonzero entries
    bool progress = true;
    auto known = [&](int a) { return std::abs(gamma[a]) > 0.5; };
    int guard = 0;
    while (progress && ++guard < 1000) {
        progress = false;
        // duality constraint
        for (int a = 0; a < n; ++a) {
            int ab = m.dual[a];
            if (known(a) && !known(ab)) { gamma[ab] = 1.0 / gamma[a]; progress = true; }
        }
        for (const auto& [k, va] : A.val) {
            if (std::abs(va) < tol) continue;
            Complex ratio = B.val.at(k) / va;
            auto [a, b, c] = k;
            int unknowns = !known(a) + !known(b) + !known(c);
            if (unknowns != 1) continue;
            if (!known(a)) {
                Complex g = ratio * gamma[c] / gamma[b];
                if (a == b) g = std::sqrt(ratio * gamma[c]);  // gamma_a^2 known only up to sign; try principal
                gamma[a] = g / std::abs(g);
            } else if (!known(b)) {
                Complex g = ratio * gamma[c] / gamma[a];
                gamma[b] = g / std::abs(g);
            } else {
                Complex g = gamma[a] * gamma[b] / ratio;
                gamma[c] = g / std::abs(g);
            }
            progress = true;
        }
    }
    for (int a = 0; a < n; ++a)
        if (!known(a)) gamma[a] = 1.0;
    // verify, allowing a final sign dance over self-dual anyons whose phase
    // was fixed through a square root
    std::vector<int> sqrt_fixed;
    for (int a = 1; a < n; ++a)
        if (m.dual[a] == a && A.boundary[a] > 0) sqrt_fixed.push_back(a);
    auto check = [&](const std::vector<Complex>& g) {
        for (const auto& [k, va] : A.val) {
            auto [a, b, c] = k;
            Complex lhs = g[a] * g[b] / g[c] * va;
            if (std::abs(lhs - B.val.at(k)) > tol * 10) return false;
        }
        for (int a = 0; a < n; ++a)
            if (std::abs(g[a] * g[m.dual[a]] - 1.0) > tol * 10) return false;
        return true;
    };
    if (sqrt_fixed.size() <= 16) {
        for (unsigned mask = 0; mask < (1u << sqrt_fixed.size()); ++mask) {
            auto g = gamma;
            for (size_t i = 0; i < sqrt_fixed.size(); ++i)
                if ((mask >> i) & 1u) g[sqrt_fixed[i]] = -g[sqrt_fixed[i]];
            if (check(g)) return true;
        }
        return false;
    }
    return check(gamma);
}

}  // namespace qdlab
