#include "momenta/hankel.hpp"

#include <cmath>
#include <limits>
#include <map>
#include "json.hpp"
#include <stdexcept>

namespace momenta {

int HankelSpec::max_entry_length() const {
    int L = 0;
    for (const auto& row : entries)
        for (const auto& w : row) L = std::max(L, static_cast<int>(w.size()));
    return L;
}

HankelSpec hankel_spec(int m, int n) {
    if (n < 1) throw std::invalid_argument("hankel: n must be positive");
    HankelSpec s;
    s.m = m;
    for (int L = 0; static_cast<int>(s.basis.size()) < n; ++L) {
        s.basis = basis(m, L);
        if (L > 64) throw std::invalid_argument("hankel: basis too large");
    }
    s.basis.resize(n);
    s.entries.assign(n, std::vector<CyclicWord>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s.entries[i][j] = canonicalize(reverse(s.basis[i]) + s.basis[j]);
    return s;
}

HankelSpec hankel_spec_literal(int m, std::vector<Word> basis_words, const std::vector<std::vector<std::string>>& entries) {
    HankelSpec s;
    s.m = m;
    s.basis = std::move(basis_words);
    const std::size_t n = entries.size();
    if (s.basis.size() != n) throw std::invalid_argument("hankel: basis and entry sizes differ");
    s.entries.assign(n, std::vector<CyclicWord>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (entries[i].size() != n) throw std::invalid_argument("hankel: entry matrix is not square");
        for (std::size_t j = 0; j < n; ++j) s.entries[i][j] = canonicalize(Word::from_string(entries[i][j]));
    }
    return s;
}

std::vector<std::vector<int>> parity_blocks(const HankelSpec& spec, const SymmetryGroup& group) {
    std::vector<const SymmetryGroup::Element*> flips;
    for (const auto& e : group.elements()) {
        bool identity = true;
        for (std::size_t i = 0; i < e.perm.size(); ++i) identity &= e.perm[i] == static_cast<int>(i);
        if (identity) flips.push_back(&e);
    }
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < spec.size(); ++i) {
        std::vector<int> sig;
        for (const auto* e : flips) {
            int s = 1;
            for (std::size_t k = 0; k < spec.basis[i].size(); ++k)
                if (e->flip[spec.basis[i][k]]) s = -s;
            sig.push_back(s);
        }
        auto [it, fresh] = index.emplace(sig, static_cast<int>(blocks.size()));
        if (fresh) blocks.emplace_back();
        blocks[it->second].push_back(i);
    }
    return blocks;
}

RatFuncMatrix build_hankel(const MomentTable& table, const HankelSpec& spec) {
    const int n = spec.size();
    RatFuncMatrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const CyclicWord& w = spec.entries[i][j];
            if (!table.has(w))
                throw std::out_of_range("hankel: moment '" + w.to_string() + "' missing; raise the cutoff to " +
                                        std::to_string(spec.max_entry_length()));
            M(i, j) = table.at(w);
        }
    return M;
}

PsdVerdict psd_test_exact(RationalMatrix A) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("psd: matrix is not square");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (A(i, j) != A(j, i)) throw std::invalid_argument("psd: matrix is not symmetric");
    PsdVerdict v;
    for (Eigen::Index k = 0; k < n; ++k) {
        const BigRational d = A(k, k);
        v.pivots.push_back(d);
        if (d.sign() < 0) {
            v.feasible = false;
            v.violating_index = static_cast<int>(k);
            return v;
        }
        if (d.is_zero()) {
            for (Eigen::Index j = k + 1; j < n; ++j)
                if (!A(k, j).is_zero()) {
                    v.feasible = false;
                    v.violating_index = static_cast<int>(k);
                    return v;
                }
            continue;
        }
        const BigRational inv = d.inverse();
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (A(k, i).is_zero()) continue;
            const BigRational f = A(k, i) * inv;
            for (Eigen::Index j = i; j < n; ++j)
                if (!A(k, j).is_zero()) A(i, j) -= f * A(k, j);
        }
    }
    return v;
}

double psd_margin(const Eigen::MatrixXd& M) {
    Eigen::MatrixXd A = M;
    const Eigen::Index n = A.rows();
    double margin = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double scale = std::max(1.0, std::abs(M(k, k)));
        const double d = A(k, k);
        margin = std::min(margin, d / scale);
        if (d <= 0) continue;
        for (Eigen::Index i = k + 1; i < n; ++i) {
            const double f = A(k, i) / d;
            for (Eigen::Index j = i; j < n; ++j) A(i, j) -= f * A(k, j);
        }
    }
    return margin;
}

MinorConstraint minor_constraint(const RatFuncMatrix& M, const std::vector<int>& rows) {
    if (rows.empty()) throw std::invalid_argument("minor: empty row set");
    for (int r : rows)
        if (r < 0 || r >= M.rows()) throw std::invalid_argument("minor: row index out of range");
    const VarList& vars = M(0, 0).vars();
    MinorConstraint c;
    RatFuncMatrix sub = principal_submatrix(M, rows);
    c.det = determinant(sub, RatFunc(vars, BigRational(0)), RatFunc(vars, BigRational(1)));
    const Poly& N = c.det.num();
    const Poly& D = c.det.den();
    if (D.is_monomial()) {
        const auto& mono = D.lead().mono;
        bool g_odd = mono.e[0] % 2 == 1, other_odd = false;
        for (int i = 1; i < kMaxVars; ++i) other_odd |= mono.e[i] % 2 == 1;
        if (!other_odd) {
            c.constraint = N;
            c.kind = g_odd ? MinorConstraint::Kind::SignConditional : MinorConstraint::Kind::Definite;
            c.sign_when_g_positive = D.lead().coeff.sign() > 0 ? 1 : -1;
            if (!g_odd && D.lead().coeff.sign() < 0) c.constraint = -N;
            return c;
        }
    }
    c.kind = MinorConstraint::Kind::Product;
    c.constraint = N * D;
    return c;
}

std::string MinorConstraint::to_string() const {
    switch (kind) {
        case Kind::Definite:
            return constraint.to_string() + " >= 0";
        case Kind::SignConditional: {
            std::string p = constraint.to_string();
            const char* pos = sign_when_g_positive > 0 ? " >= 0" : " <= 0";
            const char* neg = sign_when_g_positive > 0 ? " <= 0" : " >= 0";
            return p + pos + " for g > 0; " + p + neg + " for g < 0";
        }
        case Kind::Product:
            return "(" + constraint.to_string() + ") >= 0 where the denominator " + det.den().to_string() + " != 0";
    }
    return {};
}

std::optional<RationalMatrix> evaluate(const RatFuncMatrix& M, const std::vector<BigRational>& point) {
    RationalMatrix out(M.rows(), M.cols());
    try {
        for (Eigen::Index i = 0; i < M.rows(); ++i)
            for (Eigen::Index j = 0; j < M.cols(); ++j) out(i, j) = M(i, j).eval(point);
    } catch (const DenominatorZero&) {
        return std::nullopt;
    }
    return out;
}

std::string hankel_to_json(const RatFuncMatrix& M) {
    nlohmann::json j = nlohmann::json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index k = 0; k < M.cols(); ++k) row.push_back(M(i, k).to_string());
        j.push_back(row);
    }
    return j.dump();
}

}  // namespace momenta
