#pragma once

// Independent helpers shared by the unit tests.

#include <bit>
#include <complex>
#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "opdeloc/couplings.hpp"
#include "opdeloc/dense_oracle.hpp"
#include "opdeloc/netgen.hpp"
#include "opdeloc/opspace.hpp"

namespace testing {

using opdeloc::Mask;

// Normalized strings multiply as O_A O_B = sign * O_{A xor B}; the sign is
// the parity of pairs (a in A, b in B) with a > b.
inline int string_product_sign(Mask a, Mask b) {
    int swaps = 0;
    for (Mask rest = b; rest; rest &= rest - 1) {
        const int bit = std::countr_zero(rest);
        swaps += std::popcount(a & ~((Mask{2} << bit) - 1));
    }
    return swaps % 2 ? -1 : 1;
}

// T_{S',S} from [H, O_S] = i sum T_{S'S} O_{S'}, built from the string algebra
// with H = (i/2) sum_{a<b} J_ab O_{ab}.
inline std::map<Mask, double> commutator_column(const opdeloc::CouplingMatrix& j, Mask s) {
    std::map<Mask, double> col;
    for (const auto& t : j.terms()) {
        const Mask ab = (Mask{1} << t.a) | (Mask{1} << t.b);
        const int left = string_product_sign(ab, s);
        const int right = string_product_sign(s, ab);
        const double c = 0.5 * t.value * (left - right);
        if (c != 0.0) col[ab ^ s] += c;
    }
    return col;
}

inline opdeloc::CouplingMatrix random_couplings(const opdeloc::Graph& g, std::uint64_t seed) {
    opdeloc::Rng rng(seed);
    return opdeloc::sample_couplings(g, rng);
}

inline Eigen::VectorXd random_unit(Eigen::Index n, std::uint64_t seed) {
    opdeloc::Rng rng(seed);
    std::normal_distribution<double> d;
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = d(rng);
    return v / v.norm();
}

// Plain Lanczos with full reorthogonalization on an explicit antisymmetric matrix.
inline std::vector<double> dense_lanczos(const Eigen::MatrixXd& t, Eigen::VectorXd v, int steps, double tol) {
    std::vector<Eigen::VectorXd> q{v};
    std::vector<double> b;
    for (int n = 0; n < steps; ++n) {
        Eigen::VectorXd w = t * q[n];
        if (n > 0) w += b.back() * q[n - 1];
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& x : q) w -= x.dot(w) * x;
        const double norm = w.norm();
        if (norm < tol) break;
        b.push_back(norm);
        q.push_back(w / norm);
    }
    return b;
}

// E ||T^n v||^2 for the normalized battery operator v, complete graph with
// Gaussian couplings of variance `var`, summed exactly over Wick pairings.
// T is linear in the couplings, T = sum_e J_e A_e, so only the pairings of the
// 2n factors in (T^T)^n T^n survive the average.
inline double wick_moment(opdeloc::Axis axis, int num_modes, int n, double var) {
    using namespace opdeloc;
    const auto op = battery_operator(axis, num_modes);
    const auto g = make_complete(num_modes);
    std::vector<std::vector<Eigen::MatrixXd>> unit(num_modes + 1);  // unit[s][e]
    for (const auto& t : op.terms) {
        const int s = t.string.size();
        if (!unit[s].empty()) continue;
        for (const auto& e : g.edges())
            unit[s].push_back(dense_superoperator_sector(CouplingMatrix(num_modes, {{e.a, e.b, 1.0}}), s));
    }
    std::vector<std::vector<std::pair<int, int>>> pairings;
    std::vector<std::pair<int, int>> cur;
    std::vector<bool> used(2 * n, false);
    std::function<void()> match = [&] {
        int first = 0;
        while (first < 2 * n && used[first]) ++first;
        if (first == 2 * n) {
            pairings.push_back(cur);
            return;
        }
        used[first] = true;
        for (int k = first + 1; k < 2 * n; ++k) {
            if (used[k]) continue;
            used[k] = true;
            cur.emplace_back(first, k);
            match();
            cur.pop_back();
            used[k] = false;
        }
        used[first] = false;
    };
    match();
    const int edges = g.num_edges();
    double total = 0.0;
    std::map<int, Eigen::VectorXcd> sectors;
    for (const auto& t : op.terms) {
        const int s = t.string.size();
        const auto basis = sector_basis(num_modes, s);
        auto& v = sectors[s];
        if (v.size() == 0) v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->dimension()));
        v(static_cast<Eigen::Index>(basis->index(t.string.mask))) += op.normalization * t.phase;
    }
    for (const auto& [s, v] : sectors) {
        for (const auto& p : pairings) {
            std::vector<int> assign(n, 0), edge(2 * n);
            while (true) {
                for (int k = 0; k < n; ++k) edge[p[k].first] = edge[p[k].second] = assign[k];
                Eigen::VectorXcd left = v, right = v;
                for (int k = 0; k < n; ++k) left = unit[s][edge[k]] * left;
                for (int k = n; k < 2 * n; ++k) right = unit[s][edge[k]] * right;
                total += left.dot(right).real();
                int k = 0;
                while (k < n && ++assign[k] == edges) assign[k++] = 0;
                if (k == n) break;
            }
        }
    }
    return total * std::pow(var, n);
}

}  // namespace testing
