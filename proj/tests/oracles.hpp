#pragma once

// Independent reference implementations used to cross-check the library.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "qwalk/graph.hpp"

namespace oracle {

using qw::CMatrix;
using qw::Graph;
using qw::Matrix;

// True when some vertex permutation maps g onto h and fixes every colour.
inline bool isomorphic(const Graph& g, const Graph& h, const std::vector<int>& cg = {},
                       const std::vector<int>& ch = {}) {
    const auto n = g.size();
    if (n != h.size()) {
        return false;
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!cg.empty() && cg[i] != ch[perm[i]]) {
                ok = false;
                break;
            }
            for (std::size_t j = 0; j < n && ok; ++j) {
                ok = g.weight(i, j) == h.weight(perm[i], perm[j]);
            }
        }
        if (ok) {
            return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// exp(-i A t) by scaling and squaring a truncated Taylor series.
inline CMatrix expm_minus_i(const Matrix& a, double t) {
    const CMatrix x = CMatrix(a.cast<qw::cplx>()) * qw::cplx(0.0, -t);
    const double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale /= 2.0;
        ++squarings;
    }
    const CMatrix y = x * scale;
    CMatrix term = CMatrix::Identity(x.rows(), x.cols());
    CMatrix sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = term * y / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) {
        sum = sum * sum;
    }
    return sum;
}

inline CMatrix matrix_power(const CMatrix& u, std::size_t k) {
    CMatrix out = CMatrix::Identity(u.rows(), u.cols());
    for (std::size_t i = 0; i < k; ++i) {
        out = u * out;
    }
    return out;
}

// Distribution after `steps` moves of the simple random walk (1/deg per edge or loop).
inline std::vector<double> markov(const Graph& g, std::vector<double> p, std::size_t steps) {
    const auto n = g.size();
    for (std::size_t s = 0; s < steps; ++s) {
        std::vector<double> q(n, 0.0);
        for (std::size_t v = 0; v < n; ++v) {
            std::size_t deg = 0;
            for (std::size_t w = 0; w < n; ++w) {
                deg += g.weight(v, w) != 0.0 ? 1 : 0;
            }
            if (deg == 0) {
                q[v] += p[v];
                continue;
            }
            for (std::size_t w = 0; w < n; ++w) {
                if (g.weight(v, w) != 0.0) {
                    q[w] += p[v] / static_cast<double>(deg);
                }
            }
        }
        p = q;
    }
    return p;
}

inline Graph random_graph(std::size_t n, double density, std::mt19937_64& rng, bool loops = false) {
    std::bernoulli_distribution edge(density);
    Matrix a = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (edge(rng)) {
                a(i, j) = a(j, i) = 1.0;
            }
        }
        if (loops && edge(rng)) {
            a(i, i) = 1.0;
        }
    }
    return Graph(a);
}

inline std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

} // namespace oracle
