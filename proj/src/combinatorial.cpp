#include "bfc/combinatorial.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "bfc/error.hpp"

namespace bfc {

namespace {

void check_cap(const TruthTable& f, int cap, const char* what) {
    if (f.arity() > cap)
        throw CapExceeded(std::string(what) + " supports arity <= " + std::to_string(cap) +
                          ", got " + std::to_string(f.arity()));
}

void finish(LocalMeasure& m) {
    m.global = 0;
    m.argmax_input = 0;
    for (std::size_t x = 0; x < m.per_input.size(); ++x) {
        if (m.per_input[x] > m.global) {
            m.global = m.per_input[x];
            m.argmax_input = x;
        }
    }
}

// contains[B] is true iff some nonempty C ⊆ B has f(x ^ C) != f(x).
std::vector<char> sensitive_closure(const TruthTable& f, Input x) {
    const Input size = f.size();
    const bool fx = f(x);
    std::vector<char> contains(size, 0);
    for (Input b = 1; b < size; ++b) {
        if (f(x ^ b) != fx) {
            contains[b] = 1;
            continue;
        }
        for (Input rest = b; rest; rest &= rest - 1) {
            Input bit = rest & (~rest + 1);
            if (contains[b ^ bit]) {
                contains[b] = 1;
                break;
            }
        }
    }
    return contains;
}

std::vector<Input> minimal_blocks_from(const TruthTable& f, Input x, const std::vector<char>& contains) {
    std::vector<Input> blocks;
    const bool fx = f(x);
    for (Input b = 1; b < f.size(); ++b) {
        if (f(x ^ b) == fx) continue;
        bool minimal = true;
        for (Input rest = b; rest; rest &= rest - 1) {
            Input bit = rest & (~rest + 1);
            if (contains[b ^ bit]) {
                minimal = false;
                break;
            }
        }
        if (minimal) blocks.push_back(b);
    }
    return blocks;
}

class BlockPacker {
public:
    BlockPacker(int n, const std::vector<Input>& blocks) : by_low_(static_cast<std::size_t>(n)), memo_(Input{1} << n, -1) {
        for (auto b : blocks) by_low_[static_cast<std::size_t>(__builtin_ctzll(b))].push_back(b);
        for (auto& group : by_low_) std::sort(group.begin(), group.end(), [](Input a, Input b) {
            return popcount(a) < popcount(b) || (popcount(a) == popcount(b) && a < b);
        });
    }

    int pack(Input avail) {
        if (avail == 0) return 0;
        auto& slot = memo_[avail];
        if (slot >= 0) return slot;
        const int low = __builtin_ctzll(avail);
        int best = pack(avail & (avail - 1));
        // Each chosen block removes at least one variable.
        const int bound = popcount(avail);
        for (auto b : by_low_[static_cast<std::size_t>(low)]) {
            if (best >= bound) break;
            if ((b & ~avail) != 0) continue;
            best = std::max(best, 1 + pack(avail & ~b));
        }
        slot = static_cast<signed char>(best);
        return best;
    }

private:
    std::vector<std::vector<Input>> by_low_;
    std::vector<signed char> memo_;
};

struct TableKeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& key) const {
        std::size_t h = 1469598103934665603ull;
        for (auto w : key) {
            h ^= static_cast<std::size_t>(w);
            h *= 1099511628211ull;
            h ^= h >> 29;
        }
        return h;
    }
};

TruthTable fix_variable(const TruthTable& f, int var, bool value) {
    const int n = f.arity();
    TruthTable out(n - 1);
    const Input low_mask = (Input{1} << var) - 1;
    const Input fixed = value ? (Input{1} << var) : 0;
    for (Input y = 0; y < out.size(); ++y) {
        Input x = (y & low_mask) | ((y & ~low_mask) << 1) | fixed;
        if (f(x)) out.set(y, true);
    }
    return out;
}

class QuerySolver {
public:
    int depth(const TruthTable& f) {
        if (f.is_constant()) return 0;
        std::vector<std::uint64_t> key(f.words().begin(), f.words().end());
        key.push_back(static_cast<std::uint64_t>(f.arity()));
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        int best = f.arity();
        for (int i = 0; i < f.arity() && best > 1; ++i) {
            int d0 = depth(fix_variable(f, i, false));
            if (1 + d0 >= best) continue;
            int d1 = depth(fix_variable(f, i, true));
            best = std::min(best, 1 + std::max(d0, d1));
        }
        memo_.emplace(std::move(key), best);
        return best;
    }

private:
    std::unordered_map<std::vector<std::uint64_t>, int, TableKeyHash> memo_;
};

}  // namespace

SensitivityResult sensitivity(const PartialTruthTable& f) {
    SensitivityResult r;
    const int n = f.arity();
    r.measure.per_input.assign(f.size(), 0);
    for (Input x = 0; x < f.size(); ++x) {
        if (!f.defined(x)) continue;
        const bool fx = f(x);
        int s = 0;
        for (int i = 0; i < n; ++i) {
            Input y = x ^ (Input{1} << i);
            if (f.defined(y) && f(y) != fx) ++s;
        }
        r.measure.per_input[x] = s;
        r.total += static_cast<std::uint64_t>(s);
        ++r.domain;
        if (fx) {
            r.has_one_inputs = true;
            r.s1 = std::max(r.s1, s);
        } else {
            r.has_zero_inputs = true;
            r.s0 = std::max(r.s0, s);
        }
    }
    finish(r.measure);
    return r;
}

SensitivityResult sensitivity(const TruthTable& f) { return sensitivity(PartialTruthTable(f)); }

std::vector<Input> minimal_sensitive_blocks(const TruthTable& f, Input x) {
    check_cap(f, kBlockSensitivityCap, "block sensitivity");
    return minimal_blocks_from(f, x, sensitive_closure(f, x));
}

int block_sensitivity_at(const TruthTable& f, Input x) {
    check_cap(f, kBlockSensitivityCap, "block sensitivity");
    auto blocks = minimal_blocks_from(f, x, sensitive_closure(f, x));
    if (blocks.empty()) return 0;
    BlockPacker packer(f.arity(), blocks);
    return packer.pack(f.size() - 1);
}

int certificate_complexity_at(const TruthTable& f, Input x) {
    check_cap(f, kCertificateCap, "certificate complexity");
    auto contains = sensitive_closure(f, x);
    // A set S certifies x iff the free subcube on its complement holds no
    // sensitive block; search ascending |S| through the complement.
    const int n = f.arity();
    const Input full = f.size() - 1;
    for (int k = 0; k <= n; ++k) {
        for (Input s = 0; s <= full; ++s) {
            if (popcount(s) != k) continue;
            if (!contains[full & ~s]) return k;
        }
    }
    return n;
}

LocalMeasure block_sensitivity(const TruthTable& f) {
    check_cap(f, kBlockSensitivityCap, "block sensitivity");
    LocalMeasure m;
    m.per_input.resize(f.size());
    for (Input x = 0; x < f.size(); ++x) m.per_input[x] = block_sensitivity_at(f, x);
    finish(m);
    return m;
}

LocalMeasure certificate_complexity(const TruthTable& f) {
    check_cap(f, kCertificateCap, "certificate complexity");
    LocalMeasure m;
    m.per_input.resize(f.size());
    if (!f.is_constant())
        for (Input x = 0; x < f.size(); ++x) m.per_input[x] = certificate_complexity_at(f, x);
    finish(m);
    return m;
}

DecisionTreeResult decision_tree(const TruthTable& f, const QueryOptions& options) {
    check_cap(f, options.max_arity, "deterministic query complexity");
    DecisionTreeResult r;
    if (f.is_constant()) return r;
    QuerySolver solver;
    r.depth = solver.depth(f);
    for (int i = 0; i < f.arity(); ++i) {
        int d = 1 + std::max(solver.depth(fix_variable(f, i, false)), solver.depth(fix_variable(f, i, true)));
        if (d == r.depth) {
            r.root_variable = i + 1;
            break;
        }
    }
    return r;
}

int deterministic_query_complexity(const TruthTable& f, const QueryOptions& options) {
    check_cap(f, options.max_arity, "deterministic query complexity");
    if (f.is_constant()) return 0;
    QuerySolver solver;
    return solver.depth(f);
}

}  // namespace bfc
