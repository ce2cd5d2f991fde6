#pragma once

// Exact coefficient fields: the rationals (GMP) and prime fields Z/p.
//
// A field is a small value object that owns the arithmetic; matrices and
// graded maps carry their field and store bare elements.  Both fields keep
// elements in a canonical form, so equality of elements is equality of
// representations.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "coalg/error.hpp"

namespace coalg {

template <class K>
concept ExactField = std::equality_comparable<K> && requires(const K& k, const typename K::value_type& a,
                                                            long n, std::string_view s) {
    typename K::value_type;
    { k.zero() } -> std::same_as<typename K::value_type>;
    { k.one() } -> std::same_as<typename K::value_type>;
    { k.from_int(n) } -> std::same_as<typename K::value_type>;
    { k.add(a, a) } -> std::same_as<typename K::value_type>;
    { k.sub(a, a) } -> std::same_as<typename K::value_type>;
    { k.mul(a, a) } -> std::same_as<typename K::value_type>;
    { k.neg(a) } -> std::same_as<typename K::value_type>;
    { k.inv(a) } -> std::same_as<typename K::value_type>;
    { k.is_zero(a) } -> std::same_as<bool>;
    { k.equal(a, a) } -> std::same_as<bool>;
    { k.parse(s) } -> std::same_as<typename K::value_type>;
    { k.format(a) } -> std::same_as<std::string>;
    { k.name() } -> std::same_as<std::string>;
};

/// The field of rational numbers with arbitrary-precision numerator and
/// denominator, always in lowest terms with positive denominator.
struct Rationals {
    using value_type = mpq_class;

    value_type zero() const { return value_type(0); }
    value_type one() const { return value_type(1); }
    value_type from_int(long n) const { return value_type(n); }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const {
        if (sgn(a) == 0) throw DomainError("division by zero in Q");
        return 1 / a;
    }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }

    /// Accepts "p" or "p/q" with optional leading sign.
    value_type parse(std::string_view text) const {
        std::string s(text);
        if (s.empty()) throw DomainError("empty rational literal");
        auto slash = s.find('/');
        auto valid_int = [](const std::string& t) {
            std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        if (slash == std::string::npos) {
            if (!valid_int(s)) throw DomainError("bad rational literal '" + s + "'");
            if (s[0] == '+') s.erase(0, 1);
            return value_type(mpz_class(s));
        }
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
            throw DomainError("bad rational literal '" + s + "'");
        if (num[0] == '+') num.erase(0, 1);
        mpz_class d(den);
        if (d == 0) throw DomainError("zero denominator in '" + s + "'");
        value_type q(mpz_class(num), d);
        q.canonicalize();
        return q;
    }
    std::string format(const value_type& a) const { return a.get_str(); }
    std::string name() const { return "Q"; }

    friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

/// Z/p for a prime p < 2^31, elements stored as residues in [0, p).
class PrimeField {
public:
    using value_type = std::uint32_t;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (!is_prime(p)) throw DomainError("modulus " + std::to_string(p) + " is not a prime");
        if (p >= (1u << 31)) throw DomainError("modulus too large");
    }

    std::uint32_t modulus() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long n) const {
        long r = n % static_cast<long>(p_);
        return static_cast<value_type>(r < 0 ? r + p_ : r);
    }
    value_type add(value_type a, value_type b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
    }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type inv(value_type a) const {
        if (a == 0) throw DomainError("division by zero in F_" + std::to_string(p_));
        // Fermat: a^(p-2)
        std::uint64_t result = 1, base = a, e = p_ - 2;
        while (e) {
            if (e & 1) result = result * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return static_cast<value_type>(result);
    }
    bool is_zero(value_type a) const { return a == 0; }
    bool equal(value_type a, value_type b) const { return a == b; }

    /// Accepts any decimal integer and reduces it mod p.
    value_type parse(std::string_view text) const {
        std::string s(text);
        try {
            std::size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used != s.size()) throw DomainError("bad residue literal '" + s + "'");
            long long r = v % static_cast<long long>(p_);
            return static_cast<value_type>(r < 0 ? r + p_ : r);
        } catch (const std::logic_error&) {
            throw DomainError("bad residue literal '" + s + "'");
        }
    }
    std::string format(value_type a) const { return std::to_string(a); }
    std::string name() const { return "F" + std::to_string(p_); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    std::uint32_t p_;
};

static_assert(ExactField<Rationals>);
static_assert(ExactField<PrimeField>);

}  // namespace coalg
