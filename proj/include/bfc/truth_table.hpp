#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bfc {

using Input = std::uint64_t;

inline constexpr int kMaxArity = 20;

/// Total Boolean function on `arity` variables stored as a packed table of
/// 2^arity bits. Variable x_1 is the least-significant bit of the row index,
/// so flipping x_i is `x ^ (1 << (i - 1))`.
class TruthTable {
public:
    TruthTable() : TruthTable(0) {}
    explicit TruthTable(int arity, bool fill = false);

    static TruthTable from_function(int arity, const std::function<bool(Input)>& fn);
    static TruthTable from_bits(int arity, const std::vector<bool>& bits);

    /// Parses the `n:HEX` text form (see format_hex).
    static TruthTable parse(std::string_view text);

    int arity() const { return arity_; }
    Input size() const { return Input{1} << arity_; }

    // Unchecked access for inner loops.
    bool operator()(Input x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
    bool operator[](Input x) const { return (*this)(x); }

    /// Checked access; throws PreconditionError when x is out of range.
    bool evaluate(Input x) const;

    void set(Input x, bool value);
    void flip(Input x) { words_[x >> 6] ^= std::uint64_t{1} << (x & 63); }

    bool is_constant() const;
    std::size_t count_ones() const;

    std::span<const std::uint64_t> words() const { return words_; }

    /// `n:HEX`, ⌈2^n/4⌉ upper-case hex digits, most significant first; the
    /// last digit holds f(0)..f(3) with f(0) as its bit 0. OR_2 is `2:E`.
    std::string format_hex() const;
    std::string hex_digits() const;

    TruthTable negated() const;

    friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
    int arity_;
    std::vector<std::uint64_t> words_;

    void clear_tail();
};

/// Function defined on a subset of the cube. Values outside `domain` are
/// ignored by every consumer.
class PartialTruthTable {
public:
    PartialTruthTable(TruthTable values, TruthTable domain);
    explicit PartialTruthTable(const TruthTable& total);

    int arity() const { return values_.arity(); }
    Input size() const { return values_.size(); }
    bool defined(Input x) const { return domain_(x); }
    bool operator()(Input x) const { return values_(x); }

    const TruthTable& values() const { return values_; }
    const TruthTable& domain() const { return domain_; }

    bool is_total() const;

private:
    TruthTable values_;
    TruthTable domain_;
};

/// Assignment of fixed values to a subset of 1-based variable indices.
struct Restriction {
    std::map<int, bool> fixed;

    /// Parses comma-separated `i=b` pairs, e.g. `1=0,3=1`.
    static Restriction parse(std::string_view text);
    std::string format() const;
};

bool evaluate(const TruthTable& f, Input x);

/// Subcube function on the unfixed variables, renumbered in ascending order.
TruthTable restrict(const TruthTable& f, const Restriction& r);

/// f ∘ g with the same inner g on every block; block i occupies variables
/// (i-1)m+1 .. im of the result.
TruthTable compose(const TruthTable& f, const TruthTable& g);

/// Families: OR, AND, PARITY, EXACT1, XOR-OR, AND-OR, MAJORITY, CONST0, CONST1.
/// AND-OR is AND_k ∘ OR_l with n = k*l; `inner` gives l (defaults to the
/// integer square root when n is a perfect square).
TruthTable named_family(std::string_view name, int n, std::optional<int> inner = std::nullopt);
TruthTable and_or(int k, int l);
std::vector<std::string> family_names();

struct ParityPartition {
    std::vector<Input> agree;     // f(x) == parity(x)
    std::vector<Input> disagree;  // f(x) != parity(x)
};

ParityPartition parity_partition(const TruthTable& f);

inline int popcount(Input x) { return __builtin_popcountll(x); }
inline bool parity_of(Input x) { return __builtin_parityll(x); }

}  // namespace bfc
