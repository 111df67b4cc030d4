#pragma once

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qhd/config.hpp"
#include "qhd/errors.hpp"

namespace qhd {

namespace detail {

inline std::uint64_t table_word_count(int n) {
    return (std::uint64_t{1} << n) <= 64 ? 1 : (std::uint64_t{1} << (n - 6));
}

// Mask selecting the valid bits of the last table word (all-ones for n >= 6).
inline std::uint64_t last_word_mask(int n) {
    return n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
}

} // namespace detail

// Truth table of an n-input Boolean function, packed 64 entries per word.
// Entry x of the table is f(x), where input x0 is the least significant
// bit of the index x. Unused bits of the last word are kept zero so that
// word-wise AND/XOR/popcount act directly on the function.
class BooleanFunction {
public:
    BooleanFunction() = default;

    BooleanFunction(int n, std::vector<std::uint64_t> words) : n_(n), words_(std::move(words)) {
        if (n < 1 || n > max_arity)
            throw input_error("arity must be in [1, " + std::to_string(max_arity) + "], got " +
                              std::to_string(n));
        if (words_.size() != detail::table_word_count(n))
            throw input_error("truth table has " + std::to_string(words_.size()) +
                              " words, expected " + std::to_string(detail::table_word_count(n)));
        words_.back() &= detail::last_word_mask(n);
    }

    int arity() const { return n_; }

    // N = 2^n, the number of table entries.
    std::uint64_t size() const { return std::uint64_t{1} << n_; }

    bool operator()(std::uint64_t x) const { return (words_[x >> 6] >> (x & 63)) & 1; }

    const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

inline BooleanFunction from_truth_table(std::span<const std::uint8_t> bits, int n) {
    if (n < 1 || n > max_arity)
        throw input_error("arity must be in [1, " + std::to_string(max_arity) + "], got " +
                          std::to_string(n));
    const std::uint64_t N = std::uint64_t{1} << n;
    if (bits.size() != N)
        throw input_error("truth table has " + std::to_string(bits.size()) +
                          " entries, expected 2^" + std::to_string(n) + " = " + std::to_string(N));
    std::vector<std::uint64_t> words(detail::table_word_count(n), 0);
    for (std::uint64_t x = 0; x < N; ++x)
        if (bits[x]) words[x >> 6] |= std::uint64_t{1} << (x & 63);
    return BooleanFunction(n, std::move(words));
}

// Table given as a string of '0'/'1' characters, entry 0 first.
inline BooleanFunction from_table_string(std::string_view bits, int n) {
    std::vector<std::uint8_t> v;
    v.reserve(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1')
            throw input_error("truth table string: invalid character '" +
                              std::string(1, bits[i]) + "' at offset " + std::to_string(i));
        v.push_back(bits[i] == '1');
    }
    return from_truth_table(v, n);
}

// M = |{x : f(x) = 1}|.
inline std::uint64_t count_ones(const BooleanFunction& f) {
    std::uint64_t m = 0;
    for (std::uint64_t w : f.words()) m += std::popcount(w);
    return m;
}

inline BooleanFunction operator^(const BooleanFunction& a, const BooleanFunction& b) {
    if (a.arity() != b.arity()) throw input_error("arity mismatch in function XOR");
    std::vector<std::uint64_t> w(a.words());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] ^= b.words()[i];
    return BooleanFunction(a.arity(), std::move(w));
}

inline BooleanFunction operator&(const BooleanFunction& a, const BooleanFunction& b) {
    if (a.arity() != b.arity()) throw input_error("arity mismatch in function AND");
    std::vector<std::uint64_t> w(a.words());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] &= b.words()[i];
    return BooleanFunction(a.arity(), std::move(w));
}

inline BooleanFunction operator~(const BooleanFunction& a) {
    std::vector<std::uint64_t> w(a.words());
    for (auto& x : w) x = ~x;
    return BooleanFunction(a.arity(), std::move(w));
}

namespace detail {

inline void require_shared_arity(std::span<const BooleanFunction> funcs, const char* op) {
    if (funcs.empty()) throw input_error(std::string(op) + ": empty function list");
    for (const auto& f : funcs)
        if (f.arity() != funcs.front().arity())
            throw input_error(std::string(op) + ": arity mismatch (" +
                              std::to_string(funcs.front().arity()) + " vs " +
                              std::to_string(f.arity()) + ")");
}

} // namespace detail

// M_c = |{x : f_j(x) = 1 for every j}|, the common-solution count.
inline std::uint64_t classical_joint_ones(std::span<const BooleanFunction> funcs) {
    detail::require_shared_arity(funcs, "classical_joint_ones");
    std::vector<std::uint64_t> acc(funcs.front().words());
    for (std::size_t j = 1; j < funcs.size(); ++j)
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] &= funcs[j].words()[i];
    std::uint64_t m = 0;
    for (std::uint64_t w : acc) m += std::popcount(w);
    return m;
}

// Textbook distance: |{x : not all f_j(x) equal}|. For two functions this
// is the usual Hamming distance |{x : f(x) != g(x)}|.
inline std::uint64_t classical_hamming_textbook(std::span<const BooleanFunction> funcs) {
    detail::require_shared_arity(funcs, "classical_hamming_textbook");
    const int n = funcs.front().arity();
    std::vector<std::uint64_t> all_one(funcs.front().words());
    std::vector<std::uint64_t> all_zero(funcs.front().words());
    for (auto& w : all_zero) w = ~w;
    for (std::size_t j = 1; j < funcs.size(); ++j)
        for (std::size_t i = 0; i < all_one.size(); ++i) {
            all_one[i] &= funcs[j].words()[i];
            all_zero[i] &= ~funcs[j].words()[i];
        }
    all_zero.back() &= detail::last_word_mask(n);
    std::uint64_t agree = 0;
    for (std::size_t i = 0; i < all_one.size(); ++i)
        agree += std::popcount(all_one[i]) + std::popcount(all_zero[i]);
    return funcs.front().size() - agree;
}

// Spectrum of f split by output value:
//   f1[l] = (1/N) sum over solutions s (f(s)=1) of (-1)^(l.s)
//   f0[l] = (1/N) sum over non-solutions s (f(s)=0) of (-1)^(l.s)
// where l.s is the bitwise inner product mod 2.
struct WalshPair {
    std::vector<double> f0;
    std::vector<double> f1;
};

// Walsh-Hadamard butterfly over the 0/1 indicator of f. All intermediate
// values are integers below 2^n, so the result is exact: f1 is a vector of
// dyadic rationals and f0 follows from f0[l] = [l=0] - f1[l].
inline WalshPair walsh_coefficients(const BooleanFunction& f) {
    const std::uint64_t N = f.size();
    std::vector<double> f1(N);
    for (std::uint64_t x = 0; x < N; ++x) f1[x] = f(x) ? 1.0 : 0.0;
    for (std::uint64_t h = 1; h < N; h <<= 1)
        for (std::uint64_t base = 0; base < N; base += h << 1)
            for (std::uint64_t i = base; i < base + h; ++i) {
                const double a = f1[i];
                const double b = f1[i + h];
                f1[i] = a + b;
                f1[i + h] = a - b;
            }
    const double inv_n = 1.0 / static_cast<double>(N);
    std::vector<double> f0(N);
    for (std::uint64_t l = 0; l < N; ++l) {
        f1[l] *= inv_n;
        f0[l] = (l == 0 ? 1.0 : 0.0) - f1[l];
    }
    return {std::move(f0), std::move(f1)};
}

// Uniformly random truth table; deterministic for a given seed.
inline BooleanFunction random_function(int n, std::uint64_t seed) {
    if (n < 1 || n > max_arity)
        throw input_error("arity must be in [1, " + std::to_string(max_arity) + "], got " +
                          std::to_string(n));
    std::mt19937_64 eng(seed);
    std::vector<std::uint64_t> words(detail::table_word_count(n));
    for (auto& w : words) w = eng();
    words.back() &= detail::last_word_mask(n);
    return BooleanFunction(n, std::move(words));
}

// ---------------------------------------------------------------------------
// Expression parser.
//
// Grammar (loosest binding first):
//   or    := xor ('|' xor)*
//   xor   := and ('^' and)*
//   and   := unary ('&' unary)*
//   unary := ('!' | '~') unary | atom
//   atom  := '0' | '1' | 'x' digits | '(' or ')'
//
// Each node evaluates to a full packed truth table, so operators act
// word-wise on 64 assignments at a time.

namespace detail {

// In-word patterns of variables x0..x5: bit b of every word is (b >> i) & 1.
inline constexpr std::uint64_t var_pattern[6] = {
    0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
    0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL,
};

class expr_parser {
public:
    expr_parser(std::string_view text, int n) : text_(text), n_(n) {
        nwords_ = table_word_count(n);
        mask_ = last_word_mask(n);
    }

    std::vector<std::uint64_t> run() {
        auto t = parse_or();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return t;
    }

private:
    using table = std::vector<std::uint64_t>;

    std::string_view text_;
    int n_;
    std::size_t pos_ = 0;
    std::uint64_t nwords_ = 0;
    std::uint64_t mask_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw input_error("syntax error at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    table parse_or() {
        auto t = parse_xor();
        while (eat('|')) {
            auto r = parse_xor();
            for (std::uint64_t i = 0; i < nwords_; ++i) t[i] |= r[i];
        }
        return t;
    }

    table parse_xor() {
        auto t = parse_and();
        while (eat('^')) {
            auto r = parse_and();
            for (std::uint64_t i = 0; i < nwords_; ++i) t[i] ^= r[i];
        }
        return t;
    }

    table parse_and() {
        auto t = parse_unary();
        while (eat('&')) {
            auto r = parse_unary();
            for (std::uint64_t i = 0; i < nwords_; ++i) t[i] &= r[i];
        }
        return t;
    }

    table parse_unary() {
        if (eat('!') || eat('~')) {
            auto t = parse_unary();
            for (auto& w : t) w = ~w;
            t.back() &= mask_;
            return t;
        }
        return parse_atom();
    }

    table parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto t = parse_or();
            if (!eat(')')) fail("expected ')'");
            return t;
        }
        if (c == '0') {
            ++pos_;
            return table(nwords_, 0);
        }
        if (c == '1') {
            ++pos_;
            table t(nwords_, ~std::uint64_t{0});
            t.back() &= mask_;
            return t;
        }
        if (c == 'x') return parse_var();
        fail(std::string("unexpected character '") + c + "'");
    }

    table parse_var() {
        const std::size_t start = pos_;
        ++pos_; // 'x'
        std::size_t dend = pos_;
        while (dend < text_.size() && text_[dend] >= '0' && text_[dend] <= '9') ++dend;
        if (dend == pos_) fail("expected variable index after 'x'");
        int idx = -1;
        auto [p, ec] = std::from_chars(text_.data() + pos_, text_.data() + dend, idx);
        if (ec != std::errc{} || p != text_.data() + dend) idx = n_; // overflow: out of range
        pos_ = dend;
        if (idx >= n_)
            throw input_error("variable " + std::string(text_.substr(start, dend - start)) +
                              " out of range for arity " + std::to_string(n_) + " (at offset " +
                              std::to_string(start) + ")");
        return var_table(idx);
    }

    table var_table(int idx) const {
        table t(nwords_);
        if (idx < 6) {
            for (auto& w : t) w = var_pattern[idx];
        } else {
            for (std::uint64_t w = 0; w < nwords_; ++w)
                t[w] = ((w >> (idx - 6)) & 1) ? ~std::uint64_t{0} : 0;
        }
        t.back() &= mask_;
        return t;
    }
};

} // namespace detail

inline BooleanFunction parse_expression(std::string_view text, int n) {
    if (n < 1 || n > max_arity)
        throw input_error("arity must be in [1, " + std::to_string(max_arity) + "], got " +
                          std::to_string(n));
    return BooleanFunction(n, detail::expr_parser(text, n).run());
}

// ---------------------------------------------------------------------------
// Truth-table files: first line "n=<arity>", second line 2^n characters of
// '0'/'1' with entry 0 first.

inline BooleanFunction load_truth_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open truth-table file: " + path);
    std::string header;
    std::string bits;
    if (!std::getline(in, header)) throw input_error(path + ": missing header line");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header.rfind("n=", 0) != 0) throw input_error(path + ": header must be 'n=<arity>'");
    int n = 0;
    auto [p, ec] = std::from_chars(header.data() + 2, header.data() + header.size(), n);
    if (ec != std::errc{} || p != header.data() + header.size())
        throw input_error(path + ": bad arity in header '" + header + "'");
    if (!std::getline(in, bits)) throw input_error(path + ": missing table line");
    if (!bits.empty() && bits.back() == '\r') bits.pop_back();
    try {
        return from_table_string(bits, n);
    } catch (const input_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

inline void save_truth_table(const BooleanFunction& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write truth-table file: " + path);
    out << "n=" << f.arity() << "\n";
    for (std::uint64_t x = 0; x < f.size(); ++x) out << (f(x) ? '1' : '0');
    out << "\n";
}

} // namespace qhd
