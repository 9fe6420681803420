#include "bfc/truth_table.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "bfc/error.hpp"

namespace bfc {

namespace {

std::size_t word_count(int arity) {
    return ((std::size_t{1} << arity) + 63) / 64;
}

void check_arity(int arity) {
    if (arity < 0 || arity > kMaxArity) {
        throw CapExceeded("arity " + std::to_string(arity) + " outside [0, " +
                          std::to_string(kMaxArity) + "]");
    }
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

TruthTable::TruthTable(int arity, bool fill) : arity_(arity) {
    check_arity(arity);
    words_.assign(word_count(arity), fill ? ~std::uint64_t{0} : 0);
    clear_tail();
}

void TruthTable::clear_tail() {
    if (arity_ < 6) words_[0] &= (std::uint64_t{1} << (Input{1} << arity_)) - 1;
}

TruthTable TruthTable::from_function(int arity, const std::function<bool(Input)>& fn) {
    TruthTable t(arity);
    for (Input x = 0; x < t.size(); ++x)
        if (fn(x)) t.set(x, true);
    return t;
}

TruthTable TruthTable::from_bits(int arity, const std::vector<bool>& bits) {
    TruthTable t(arity);
    if (bits.size() != t.size())
        throw PreconditionError("expected " + std::to_string(t.size()) + " bits, got " +
                                std::to_string(bits.size()));
    for (Input x = 0; x < t.size(); ++x) t.set(x, bits[x]);
    return t;
}

TruthTable TruthTable::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected n:HEX, got '" + std::string(text) + "'");
    int n = -1;
    auto head = text.substr(0, colon);
    auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), n);
    if (ec != std::errc{} || ptr != head.data() + head.size())
        throw ParseError("bad arity in '" + std::string(text) + "'");
    if (n < 0 || n > kMaxArity) throw CapExceeded("arity " + std::to_string(n) + " exceeds cap");
    auto hex = text.substr(colon + 1);
    TruthTable t(n);
    std::size_t expected = std::max<std::size_t>(1, t.size() / 4);
    if (hex.size() != expected)
        throw ParseError("arity " + std::to_string(n) + " needs " + std::to_string(expected) +
                         " hex digits, got " + std::to_string(hex.size()));
    for (std::size_t k = 0; k < hex.size(); ++k) {
        int v = hex_value(hex[hex.size() - 1 - k]);
        if (v < 0) throw ParseError("bad hex digit in '" + std::string(text) + "'");
        for (int b = 0; b < 4; ++b) {
            if (!((v >> b) & 1)) continue;
            Input x = 4 * k + static_cast<Input>(b);
            if (x >= t.size()) throw ParseError("bits set beyond 2^n in '" + std::string(text) + "'");
            t.set(x, true);
        }
    }
    return t;
}

bool TruthTable::evaluate(Input x) const {
    if (x >= size())
        throw PreconditionError("input " + std::to_string(x) + " out of range for arity " +
                                std::to_string(arity_));
    return (*this)(x);
}

void TruthTable::set(Input x, bool value) {
    auto mask = std::uint64_t{1} << (x & 63);
    if (value)
        words_[x >> 6] |= mask;
    else
        words_[x >> 6] &= ~mask;
}

bool TruthTable::is_constant() const {
    auto ones = count_ones();
    return ones == 0 || ones == size();
}

std::size_t TruthTable::count_ones() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

std::string TruthTable::hex_digits() const {
    std::size_t digits = std::max<std::size_t>(1, size() / 4);
    std::string out(digits, '0');
    static constexpr char kHex[] = "0123456789ABCDEF";
    for (std::size_t k = 0; k < digits; ++k) {
        int v = 0;
        for (int b = 0; b < 4; ++b) {
            Input x = 4 * k + static_cast<Input>(b);
            if (x < size() && (*this)(x)) v |= 1 << b;
        }
        out[digits - 1 - k] = kHex[v];
    }
    return out;
}

std::string TruthTable::format_hex() const {
    return std::to_string(arity_) + ":" + hex_digits();
}

TruthTable TruthTable::negated() const {
    TruthTable t = *this;
    for (auto& w : t.words_) w = ~w;
    t.clear_tail();
    return t;
}

PartialTruthTable::PartialTruthTable(TruthTable values, TruthTable domain)
    : values_(std::move(values)), domain_(std::move(domain)) {
    if (values_.arity() != domain_.arity())
        throw PreconditionError("partial function: value and domain arities differ");
}

PartialTruthTable::PartialTruthTable(const TruthTable& total)
    : values_(total), domain_(total.arity(), true) {}

bool PartialTruthTable::is_total() const { return domain_.count_ones() == domain_.size(); }

Restriction Restriction::parse(std::string_view text) {
    Restriction r;
    std::string s(text);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("restriction item '" + item + "' lacks '='");
        int var = 0;
        int val = 0;
        auto lhs = item.substr(0, eq);
        auto rhs = item.substr(eq + 1);
        auto r1 = std::from_chars(lhs.data(), lhs.data() + lhs.size(), var);
        auto r2 = std::from_chars(rhs.data(), rhs.data() + rhs.size(), val);
        if (r1.ec != std::errc{} || r1.ptr != lhs.data() + lhs.size() || r2.ec != std::errc{} ||
            r2.ptr != rhs.data() + rhs.size() || (val != 0 && val != 1))
            throw ParseError("bad restriction item '" + item + "'");
        if (!r.fixed.emplace(var, val == 1).second)
            throw ParseError("variable " + std::to_string(var) + " fixed twice");
    }
    return r;
}

std::string Restriction::format() const {
    std::string out;
    for (auto [var, val] : fixed) {
        if (!out.empty()) out += ',';
        out += std::to_string(var) + "=" + (val ? "1" : "0");
    }
    return out;
}

bool evaluate(const TruthTable& f, Input x) { return f.evaluate(x); }

TruthTable restrict(const TruthTable& f, const Restriction& r) {
    const int n = f.arity();
    Input fixed_mask = 0;
    Input fixed_bits = 0;
    for (auto [var, val] : r.fixed) {
        if (var < 1 || var > n)
            throw PreconditionError("restriction variable " + std::to_string(var) +
                                    " outside [1, " + std::to_string(n) + "]");
        fixed_mask |= Input{1} << (var - 1);
        if (val) fixed_bits |= Input{1} << (var - 1);
    }
    std::vector<int> free_vars;
    for (int i = 0; i < n; ++i)
        if (!((fixed_mask >> i) & 1)) free_vars.push_back(i);

    TruthTable out(static_cast<int>(free_vars.size()));
    for (Input y = 0; y < out.size(); ++y) {
        Input x = fixed_bits;
        for (std::size_t j = 0; j < free_vars.size(); ++j)
            if ((y >> j) & 1) x |= Input{1} << free_vars[j];
        if (f(x)) out.set(y, true);
    }
    return out;
}

TruthTable compose(const TruthTable& f, const TruthTable& g) {
    const int k = f.arity();
    const int m = g.arity();
    if (k * m > kMaxArity)
        throw CapExceeded("composition arity " + std::to_string(k * m) + " exceeds cap");
    const Input block_mask = (Input{1} << m) - 1;
    TruthTable out(k * m);
    for (Input x = 0; x < out.size(); ++x) {
        Input outer = 0;
        for (int i = 0; i < k; ++i)
            if (g((x >> (i * m)) & block_mask)) outer |= Input{1} << i;
        if (f(outer)) out.set(x, true);
    }
    return out;
}

TruthTable and_or(int k, int l) {
    if (k < 1 || l < 1) throw PreconditionError("AND-OR needs k, l >= 1");
    return compose(named_family("AND", k), named_family("OR", l));
}

std::vector<std::string> family_names() {
    return {"OR", "AND", "PARITY", "EXACT1", "XOR-OR", "AND-OR", "MAJORITY", "CONST0", "CONST1"};
}

TruthTable named_family(std::string_view name_in, int n, std::optional<int> inner) {
    const std::string name = upper(name_in);
    if (n < 0 || n > kMaxArity) throw CapExceeded("family arity " + std::to_string(n) + " exceeds cap");
    if (name == "OR") return TruthTable::from_function(n, [](Input x) { return x != 0; });
    if (name == "AND") {
        Input all = (Input{1} << n) - 1;
        return TruthTable::from_function(n, [all](Input x) { return x == all; });
    }
    if (name == "PARITY") return TruthTable::from_function(n, [](Input x) { return parity_of(x); });
    if (name == "EXACT1") return TruthTable::from_function(n, [](Input x) { return popcount(x) == 1; });
    if (name == "XOR-OR") {
        if (n < 1) throw PreconditionError("XOR-OR needs n >= 1");
        return TruthTable::from_function(n, [](Input x) { return ((x & 1) != 0) != ((x >> 1) != 0); });
    }
    if (name == "MAJORITY")
        return TruthTable::from_function(n, [n](Input x) { return 2 * popcount(x) > n; });
    if (name == "CONST0") return TruthTable(n, false);
    if (name == "CONST1") return TruthTable(n, true);
    if (name == "AND-OR") {
        int l = 0;
        if (inner) {
            l = *inner;
        } else {
            l = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
            if (l * l != n) throw PreconditionError("AND-OR with non-square n needs an inner arity");
        }
        if (l < 1 || n % l != 0)
            throw PreconditionError("AND-OR inner arity must divide n");
        return and_or(n / l, l);
    }
    throw PreconditionError("unknown family '" + std::string(name_in) + "'");
}

ParityPartition parity_partition(const TruthTable& f) {
    ParityPartition p;
    for (Input x = 0; x < f.size(); ++x) {
        if (f(x) == parity_of(x))
            p.agree.push_back(x);
        else
            p.disagree.push_back(x);
    }
    return p;
}

}  // namespace bfc
