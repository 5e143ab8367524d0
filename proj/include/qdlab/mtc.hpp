#pragma once

// Generic modular-tensor-category data: labels, dims, S, T, fusion N, and
// sparse F/R symbols. Includes the abelian double generator, a JSON
// loader/saver, and the exhaustive Lagrangian algebra search.

#include <array>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

#include "qdlab/qdouble.hpp"

namespace qdlab {

struct MtcData {
    std::string name;
    std::vector<std::string> labels;
    std::vector<int> dual;        // label index of the antiparticle
    std::vector<double> dims;
    Eigen::MatrixXcd S;
    Eigen::VectorXcd T;           // theta_a
    std::vector<std::vector<std::vector<int>>> N;

    // F^{abc}_{d;ef} and R^{ab}_c, multiplicity-free. Missing admissible F/R
    // entries default to 1 when trivial_defaults is set (true for abelian
    // doubles, opt-in for files).
    std::map<std::array<int, 6>, Complex> F;  // key (a,b,c,d,e,f)
    std::map<std::array<int, 3>, Complex> R;  // key (a,b,c)
    bool trivial_defaults = false;

    int count() const { return static_cast<int>(labels.size()); }

    int label_index(const std::string& s) const {
        for (int i = 0; i < count(); ++i)
            if (labels[i] == s) return i;
        throw std::invalid_argument("unknown anyon label '" + s + "' in " + name);
    }

    bool admissible(int a, int b, int c) const { return N[a][b][c] > 0; }

    Complex f_symbol(int a, int b, int c, int d, int e, int f) const {
        auto it = F.find({a, b, c, d, e, f});
        if (it != F.end()) return it->second;
        if (trivial_defaults) return 1.0;
        throw std::runtime_error("missing F symbol for " + labels[a] + "," + labels[b] + "," +
                                 labels[c] + " -> " + labels[d] + " (supply --fr-data)");
    }
    Complex r_symbol(int a, int b, int c) const {
        auto it = R.find({a, b, c});
        if (it != R.end()) return it->second;
        if (trivial_defaults) return 1.0;
        throw std::runtime_error("missing R symbol for " + labels[a] + "," + labels[b] + " -> " +
                                 labels[c] + " (supply --fr-data)");
    }
    bool has_fr() const { return trivial_defaults || !F.empty() || !R.empty(); }

    double total_fpdim() const {
        double s = 0;
        for (double d : dims) s += d * d;
        return s;
    }
};

// ---------------------------------------------------------------------------
// D(Z_n): labels e^{a1} m^{a2}, all F trivial, R^{ab} = w_n^{a2 b1},
// S_{ab} = w^{-a2 b1 - a1 b2}/n, theta_a = w^{a1 a2}.

inline MtcData abelian_double(int n) {
    if (n < 2) throw std::invalid_argument("abelian_double(n) needs n >= 2");
    MtcData m;
    m.name = "D(Z" + std::to_string(n) + ")";
    m.trivial_defaults = true;
    const int N = n * n;
    auto idx = [n](int a1, int a2) { return ((a1 % n + n) % n) * n + ((a2 % n + n) % n); };
    m.labels.resize(N);
    for (int a1 = 0; a1 < n; ++a1)
        for (int a2 = 0; a2 < n; ++a2) {
            std::string s;
            if (a1 == 1) s += "e";
            else if (a1 > 1) s += "e" + std::to_string(a1);
            if (a2 == 1) s += "m";
            else if (a2 > 1) s += "m" + std::to_string(a2);
            m.labels[idx(a1, a2)] = s.empty() ? "1" : s;
        }
    m.dims.assign(N, 1.0);
    m.dual.resize(N);
    m.S.resize(N, N);
    m.T.resize(N);
    auto w = [n](long long k) { return std::polar(1.0, 2 * M_PI * ((k % n + n) % n) / n); };
    for (int a1 = 0; a1 < n; ++a1)
        for (int a2 = 0; a2 < n; ++a2) {
            int a = idx(a1, a2);
            m.dual[a] = idx(n - a1, n - a2);
            m.T(a) = w((long long)a1 * a2);
            for (int b1 = 0; b1 < n; ++b1)
                for (int b2 = 0; b2 < n; ++b2)
                    m.S(a, idx(b1, b2)) = w(-(long long)a2 * b1 - (long long)a1 * b2) / double(n);
        }
    m.N.assign(N, std::vector<std::vector<int>>(N, std::vector<int>(N, 0)));
    for (int a1 = 0; a1 < n; ++a1)
        for (int a2 = 0; a2 < n; ++a2)
            for (int b1 = 0; b1 < n; ++b1)
                for (int b2 = 0; b2 < n; ++b2)
                    m.N[idx(a1, a2)][idx(b1, b2)][idx(a1 + b1, a2 + b2)] = 1;
    for (int a1 = 0; a1 < n; ++a1)
        for (int a2 = 0; a2 < n; ++a2)
            for (int b1 = 0; b1 < n; ++b1)
                for (int b2 = 0; b2 < n; ++b2)
                    m.R[{idx(a1, a2), idx(b1, b2), idx(a1 + b1, a2 + b2)}] = w((long long)a2 * b1);
    return m;
}

// D(G) data computed from the group; F/R are left empty (character-level data
// only) unless the double is abelian.
inline MtcData mtc_from_group(const FiniteGroup& G) {
    AnyonSystem sys = anyon_system(G);
    MtcData m;
    m.name = "D(" + G.name() + ")";
    m.labels.reserve(sys.count());
    for (const auto& a : sys.anyons) m.labels.push_back(a.label);
    m.dims = sys.dims;
    m.S = sys.S;
    m.T = sys.T;
    m.N = fusion_rules(sys.S);
    m.dual.resize(sys.count());
    for (int i = 0; i < sys.count(); ++i) m.dual[i] = sys.dual(i);
    return m;
}

// builtin:ds3 uses the paper's alphabetical label order
inline MtcData builtin_mtc(const std::string& which) {
    if (which == "tc" || which == "dz2") return abelian_double(2);
    if (which == "dz3") return abelian_double(3);
    if (which == "dz4") return abelian_double(4);
    if (which == "ds3") {
        MtcData raw = mtc_from_group(symmetric_group(3));
        std::vector<int> perm(raw.count());
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(),
                  [&](int a, int b) { return raw.labels[a] < raw.labels[b]; });
        MtcData m;
        m.name = "D(S3)";
        const int n = raw.count();
        std::vector<int> inv(n);
        for (int i = 0; i < n; ++i) inv[perm[i]] = i;
        m.labels.resize(n);
        m.dims.resize(n);
        m.dual.resize(n);
        m.S.resize(n, n);
        m.T.resize(n);
        m.N.assign(n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
        for (int i = 0; i < n; ++i) {
            m.labels[i] = raw.labels[perm[i]];
            m.dims[i] = raw.dims[perm[i]];
            m.dual[i] = inv[raw.dual[perm[i]]];
            m.T(i) = raw.T(perm[i]);
            for (int j = 0; j < n; ++j) m.S(i, j) = raw.S(perm[i], perm[j]);
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) m.N[a][b][c] = raw.N[perm[a]][perm[b]][perm[c]];
        return m;
    }
    throw std::invalid_argument("unknown builtin mtc '" + which +
                                "' (available: tc, dz3, dz4, ds3)");
}

// ---------------------------------------------------------------------------
// Validation + JSON round trip

struct MtcValidation {
    double s_unitarity = 0;
    double dim_consistency = 0;     // d_a vs S_{0a}/S_{00}
    double verlinde_match = 0;      // Verlinde(S) vs stored N
    double pentagon = 0;            // on sampled/admissible F entries
    double hexagon = 0;
    bool pass(double tol = 1e-7) const {
        return s_unitarity < tol && dim_consistency < 1e-6 && verlinde_match < 0.5 &&
               pentagon < tol && hexagon < tol;
    }
};

namespace detail {

// pentagon: F^{fcd}_{e;gl} F^{abl}_{e;fk} = sum_h F^{abc}_{g;fh} F^{ahd}_{e;gk} F^{bcd}_{k;hl}
// restricted to admissible entries; hexagon: R F R = sum F R F.
inline MtcValidation validate_fr(const MtcData& m, bool exhaustive) {
    MtcValidation v;
    const int n = m.count();
    if (!m.has_fr()) return v;
    auto adm = [&](int a, int b, int c) { return m.admissible(a, b, c); };
    (void)exhaustive;  // mult-free checks below are cheap enough to run in full
    // For group-like N check the exact hexagon R^{ab}R^{ac} = R^{a,bc}
    bool grouplike = true;
    std::vector<int> prod(n * n, -1);
    for (int a = 0; a < n && grouplike; ++a)
        for (int b = 0; b < n; ++b) {
            int cnt = 0, cc = -1;
            for (int c = 0; c < n; ++c)
                if (m.N[a][b][c]) { cnt += m.N[a][b][c]; cc = c; }
            if (cnt != 1) { grouplike = false; break; }
            prod[a * n + b] = cc;
        }
    if (grouplike) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    int bc = prod[b * n + c];
                    Complex lhs = m.r_symbol(a, b, prod[a * n + b]) * m.r_symbol(a, c, prod[a * n + c]);
                    Complex rhs = m.r_symbol(a, bc, prod[a * n + bc]);
                    v.hexagon = std::max(v.hexagon, std::abs(lhs - rhs));
                }
        // pentagon for grouplike F: F(a,b,c)F(a,bc,d)F(b,c,d) = F(ab,c,d)F(a,b,cd)
        auto Fv = [&](int a, int b, int c) {
            int ab = prod[a * n + b], bc = prod[b * n + c];
            return m.f_symbol(a, b, c, prod[ab * n + c], ab, bc);
        };
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        int ab = prod[a * n + b], bc = prod[b * n + c], cd = prod[c * n + d];
                        Complex lhs = Fv(a, b, c) * Fv(a, bc, d) * Fv(b, c, d);
                        Complex rhs = Fv(ab, c, d) * Fv(a, b, cd);
                        v.pentagon = std::max(v.pentagon, std::abs(lhs - rhs));
                    }
    } else if (!m.F.empty()) {
        // generic multiplicity-free pentagon over stored entries
        for (int f = 0; f < n; ++f)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    for (int e = 0; e < n; ++e)
                        for (int g = 0; g < n; ++g)
                            for (int l = 0; l < n; ++l) {
                                if (!adm(f, c, g) || !adm(g, d, e) || !adm(c, d, l) || !adm(f, l, e))
                                    continue;
                                for (int a = 0; a < n; ++a)
                                    for (int b = 0; b < n; ++b) {
                                        if (!adm(a, b, f)) continue;
                                        for (int k = 0; k < n; ++k) {
                                            if (!adm(b, l, k) || !adm(a, k, e)) continue;
                                            Complex lhs = m.f_symbol(f, c, d, e, g, l) *
                                                          m.f_symbol(a, b, l, e, f, k);
                                            Complex rhs = 0;
                                            for (int h = 0; h < n; ++h) {
                                                if (!adm(b, c, h) || !adm(a, h, g) || !adm(h, d, k))
                                                    continue;
                                                rhs += m.f_symbol(a, b, c, g, f, h) *
                                                       m.f_symbol(a, h, d, e, g, k) *
                                                       m.f_symbol(b, c, d, k, h, l);
                                            }
                                            v.pentagon = std::max(v.pentagon, std::abs(lhs - rhs));
                                        }
                                    }
                            }
    }
    return v;
}

}  // namespace detail

inline MtcValidation validate_mtc(const MtcData& m) {
    MtcValidation v = detail::validate_fr(m, m.count() <= 16);
    const int n = m.count();
    Eigen::MatrixXcd I = m.S * m.S.adjoint() - Eigen::MatrixXcd::Identity(n, n);
    v.s_unitarity = I.cwiseAbs().maxCoeff();
    if (v.s_unitarity >= 1e-7)
        throw std::runtime_error("mtc validation: S not unitary (residual " +
                                 std::to_string(v.s_unitarity) + ")");
    for (int a = 0; a < n; ++a)
        v.dim_consistency = std::max(v.dim_consistency,
                                     std::abs(m.S(0, a) / m.S(0, 0) - m.dims[a]));
    if (v.dim_consistency > 1e-6)
        throw std::runtime_error("mtc validation: dims inconsistent with S first row");
    auto N2 = fusion_rules(m.S);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                v.verlinde_match = std::max(v.verlinde_match, double(std::abs(N2[a][b][c] - m.N[a][b][c])));
    if (v.verlinde_match > 0.5)
        throw std::runtime_error("mtc validation: stored N disagrees with Verlinde(S)");
    if (v.pentagon >= 1e-7)
        throw std::runtime_error("mtc validation: pentagon residual " + std::to_string(v.pentagon));
    if (v.hexagon >= 1e-7)
        throw std::runtime_error("mtc validation: hexagon residual " + std::to_string(v.hexagon));
    return v;
}

// ---------------------------------------------------------------------------
// JSON schema:
// { "name": str, "labels": [str], "dual": [int], "dims": [num],
//   "S": [[ [re,im], ... ]], "T": [[re,im], ...],
//   "N": [[[int]]], "trivial_F_default": bool,
//   "F": [{"idx":[a,b,c,d,e,f], "val":[re,im]}],
//   "R": [{"idx":[a,b,c], "val":[re,im]}] }

inline nlohmann::json mtc_to_json(const MtcData& m) {
    nlohmann::json j;
    j["name"] = m.name;
    j["labels"] = m.labels;
    j["dual"] = m.dual;
    j["dims"] = m.dims;
    auto cx = [](Complex z) { return nlohmann::json::array({z.real(), z.imag()}); };
    nlohmann::json S = nlohmann::json::array();
    for (int a = 0; a < m.count(); ++a) {
        nlohmann::json row = nlohmann::json::array();
        for (int b = 0; b < m.count(); ++b) row.push_back(cx(m.S(a, b)));
        S.push_back(row);
    }
    j["S"] = S;
    nlohmann::json T = nlohmann::json::array();
    for (int a = 0; a < m.count(); ++a) T.push_back(cx(m.T(a)));
    j["T"] = T;
    j["N"] = m.N;
    j["trivial_F_default"] = m.trivial_defaults;
    nlohmann::json F = nlohmann::json::array(), R = nlohmann::json::array();
    for (const auto& [k, v] : m.F)
        F.push_back({{"idx", std::vector<int>(k.begin(), k.end())}, {"val", cx(v)}});
    for (const auto& [k, v] : m.R)
        R.push_back({{"idx", std::vector<int>(k.begin(), k.end())}, {"val", cx(v)}});
    j["F"] = F;
    j["R"] = R;
    return j;
}

inline MtcData mtc_from_json(const nlohmann::json& j) {
    MtcData m;
    m.name = j.value("name", "mtc");
    m.labels = j.at("labels").get<std::vector<std::string>>();
    const int n = m.count();
    m.dual = j.at("dual").get<std::vector<int>>();
    m.dims = j.at("dims").get<std::vector<double>>();
    if ((int)m.dual.size() != n || (int)m.dims.size() != n)
        throw std::runtime_error("mtc file: dual/dims length mismatch");
    auto cx = [](const nlohmann::json& v) { return Complex(v.at(0).get<double>(), v.at(1).get<double>()); };
    m.S.resize(n, n);
    m.T.resize(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) m.S(a, b) = cx(j.at("S").at(a).at(b));
        m.T(a) = cx(j.at("T").at(a));
    }
    m.N = j.at("N").get<std::vector<std::vector<std::vector<int>>>>();
    m.trivial_defaults = j.value("trivial_F_default", false);
    for (const auto& e : j.value("F", nlohmann::json::array())) {
        auto idx = e.at("idx").get<std::vector<int>>();
        if (idx.size() != 6) throw std::runtime_error("mtc file: F idx must have 6 entries");
        m.F[{idx[0], idx[1], idx[2], idx[3], idx[4], idx[5]}] = cx(e.at("val"));
    }
    for (const auto& e : j.value("R", nlohmann::json::array())) {
        auto idx = e.at("idx").get<std::vector<int>>();
        if (idx.size() != 3) throw std::runtime_error("mtc file: R idx must have 3 entries");
        m.R[{idx[0], idx[1], idx[2]}] = cx(e.at("val"));
    }
    validate_mtc(m);
    return m;
}

inline MtcData load_mtc(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open mtc file " + path);
    nlohmann::json j;
    f >> j;
    return mtc_from_json(j);
}

// ---------------------------------------------------------------------------
// Lagrangian algebra search: exhaustive DFS over multiplicity vectors with
// n_0 = 1, n_a = 0 unless theta_a = 1, sum n_a d_a = sqrt(FPdim(B)), and
// n_a n_b <= sum_c N_{ab}^c n_c.

struct BoundaryAlgebra {
    std::vector<int> mult;
    std::string display;  // e.g. "A+B+2C"
};

inline std::string format_algebra(const MtcData& m, const std::vector<int>& mult) {
    std::string s;
    for (int a = 0; a < m.count(); ++a) {
        if (!mult[a]) continue;
        if (!s.empty()) s += "+";
        if (mult[a] > 1) s += std::to_string(mult[a]);
        s += m.labels[a];
    }
    return s.empty() ? "0" : s;
}

inline std::vector<BoundaryAlgebra> find_lagrangian_algebras(const MtcData& m) {
    const int n = m.count();
    const double target = std::sqrt(m.total_fpdim());
    std::vector<int> bosonic(n, 0);
    for (int a = 0; a < n; ++a) bosonic[a] = std::abs(m.T(a) - 1.0) < 1e-9;
    std::vector<int> cand;
    for (int a = 1; a < n; ++a)
        if (bosonic[a]) cand.push_back(a);
    std::vector<int> vec(n, 0);
    vec[0] = 1;
    std::vector<BoundaryAlgebra> out;
    auto pair_ok = [&]() {
        for (int a = 0; a < n; ++a) {
            if (!vec[a]) continue;
            for (int b = 0; b < n; ++b) {
                if (!vec[b]) continue;
                long long rhs = 0;
                for (int c = 0; c < n; ++c) rhs += (long long)m.N[a][b][c] * vec[c];
                if ((long long)vec[a] * vec[b] > rhs) return false;
            }
        }
        return true;
    };
    std::function<void(size_t, double)> rec = [&](size_t i, double total) {
        if (total > target + 1e-9) return;
        if (i == cand.size()) {
            if (std::abs(total - target) < 1e-9 && pair_ok()) {
                out.push_back({vec, format_algebra(m, vec)});
            }
            return;
        }
        int a = cand[i];
        int maxm = static_cast<int>((target - total) / m.dims[a] + 1e-9);
        for (int mm = 0; mm <= maxm; ++mm) {
            vec[a] = mm;
            rec(i + 1, total + mm * m.dims[a]);
        }
        vec[a] = 0;
    };
    rec(0, 1.0);  // vacuum contributes d_0 = 1
    std::sort(out.begin(), out.end(),
              [](const BoundaryAlgebra& a, const BoundaryAlgebra& b) { return a.mult < b.mult; });
    return out;
}

// re-check all three Lagrangian conditions for a given vector
inline bool is_lagrangian(const MtcData& m, const std::vector<int>& mult) {
    if ((int)mult.size() != m.count() || mult[0] != 1) return false;
    double total = 0;
    for (int a = 0; a < m.count(); ++a) {
        if (mult[a] < 0) return false;
        if (mult[a] && std::abs(m.T(a) - 1.0) > 1e-9) return false;
        total += mult[a] * m.dims[a];
    }
    if (std::abs(total - std::sqrt(m.total_fpdim())) > 1e-9) return false;
    for (int a = 0; a < m.count(); ++a)
        for (int b = 0; b < m.count(); ++b) {
            long long rhs = 0;
            for (int c = 0; c < m.count(); ++c) rhs += (long long)m.N[a][b][c] * mult[c];
            if ((long long)mult[a] * mult[b] > rhs) return false;
        }
    return true;
}

}  // namespace qdlab
