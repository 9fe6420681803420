#pragma once

// Brute-force reference definitions used only by the tests. Nothing here
// shares code paths with the library beyond TruthTable storage.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "bfc/linalg.hpp"
#include "bfc/truth_table.hpp"

namespace oracle {

using bfc::Input;
using bfc::TruthTable;

inline bool sensitive_block(const TruthTable& f, Input x, Input block) { return block != 0 && f(x ^ block) != f(x); }

// Maximum number of pairwise-disjoint sensitive blocks: enumerate every
// family of blocks (n <= 3 keeps this at 2^7 families).
inline int block_sensitivity_at(const TruthTable& f, Input x) {
    const Input blocks = f.size() - 1;  // nonempty masks 1..2^n-1
    int best = 0;
    for (std::uint64_t family = 0; family < (std::uint64_t{1} << blocks); ++family) {
        Input used = 0;
        int count = 0;
        bool ok = true;
        for (Input b = 1; b <= blocks && ok; ++b) {
            if (!((family >> (b - 1)) & 1)) continue;
            if ((used & b) || !sensitive_block(f, x, b)) ok = false;
            used |= b;
            ++count;
        }
        if (ok) best = std::max(best, count);
    }
    return best;
}

// Smallest S such that every y agreeing with x on S has f(y) == f(x).
inline int certificate_at(const TruthTable& f, Input x) {
    int best = f.arity();
    for (Input s = 0; s < f.size(); ++s) {
        bool ok = true;
        for (Input y = 0; y < f.size() && ok; ++y)
            if (((y ^ x) & s) == 0 && f(y) != f(x)) ok = false;
        if (ok) best = std::min(best, bfc::popcount(s));
    }
    return best;
}

inline int max_over_inputs(const TruthTable& f, const std::function<int(const TruthTable&, Input)>& m) {
    int best = 0;
    for (Input x = 0; x < f.size(); ++x) best = std::max(best, m(f, x));
    return best;
}

// Plain minimax over decision trees, no memoisation.
inline int query_complexity(const TruthTable& f) {
    if (f.is_constant()) return 0;
    int best = f.arity();
    for (int i = 1; i <= f.arity(); ++i) {
        bfc::Restriction r0, r1;
        r0.fixed[i] = false;
        r1.fixed[i] = true;
        best = std::min(best, 1 + std::max(query_complexity(bfc::restrict(f, r0)), query_complexity(bfc::restrict(f, r1))));
    }
    return best;
}

// Fourier degree: max |S| with E[f(x) (-1)^{S.x}] != 0, computed with
// exact integer sums.
inline int fourier_degree(const TruthTable& f) {
    int d = 0;
    for (Input s = 0; s < f.size(); ++s) {
        long sum = 0;
        for (Input x = 0; x < f.size(); ++x)
            if (f(x)) sum += bfc::parity_of(s & x) ? -1 : 1;
        if (sum != 0) d = std::max(d, bfc::popcount(s));
    }
    return d;
}

// Degree over GF(2) by brute force: the ANF coefficient of S is the XOR of
// f over all inputs below S.
inline int gf2_degree(const TruthTable& f) {
    int d = 0;
    for (Input s = 0; s < f.size(); ++s) {
        bool c = false;
        for (Input x = 0; x < f.size(); ++x)
            if ((x & ~s) == 0 && f(x)) c = !c;
        if (c) d = std::max(d, bfc::popcount(s));
    }
    return d;
}

// Full 2^n x 2^n adjacency, spectral norm by Jacobi on the whole matrix.
inline double lambda(const TruthTable& f) {
    bfc::Matrix a(f.size(), f.size());
    for (Input x = 0; x < f.size(); ++x)
        for (int i = 0; i < f.arity(); ++i) {
            Input y = x ^ (Input{1} << i);
            if (f(x) != f(y)) a(x, y) = 1.0;
        }
    return bfc::symmetric_spectral_norm(a);
}

inline TruthTable random_function(int n, std::mt19937_64& rng) {
    TruthTable t(n);
    for (Input x = 0; x < t.size(); ++x) t.set(x, (rng() >> 17) & 1);
    return t;
}

inline TruthTable permute_variables(const TruthTable& f, const std::vector<int>& perm) {
    // Result variable i reads original variable perm[i].
    return TruthTable::from_function(f.arity(), [&](Input y) {
        Input x = 0;
        for (int i = 0; i < f.arity(); ++i)
            if ((y >> i) & 1) x |= Input{1} << perm[static_cast<std::size_t>(i)];
        return f(x);
    });
}

}  // namespace oracle
